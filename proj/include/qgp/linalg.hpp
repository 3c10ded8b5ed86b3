// Dense complex matrix types and small helpers shared by all modules.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qgp {

using cd = std::complex<double>;
using Index = Eigen::Index;

// Largest Hilbert dimension handled with stack storage. Spin-1 needs 3,
// the qubit benchmark needs 2.
inline constexpr int kMaxDim = 4;

/// Square complex matrix: Hamiltonians, jump operators, unitaries and
/// density matrices all share this storage.
using Operator = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using StateVector = Eigen::Matrix<cd, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

/// Heap-backed matrix for superoperators (dim^2 x dim^2).
using SuperOperator = Eigen::MatrixXcd;

inline constexpr cd kI{0.0, 1.0};

inline Operator identity(Index dim) { return Operator::Identity(dim, dim); }

inline Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

/// max |A - A^dagger|
double hermiticity_defect(const Operator& a);

bool is_hermitian(const Operator& a, double tol = 1e-12);

/// Trace one, Hermitian, and min eigenvalue >= -tol.
bool is_density_matrix(const Operator& rho, double tol = 1e-10);

/// Throws InvalidDensityMatrix naming `what` when is_density_matrix fails.
void require_density_matrix(const Operator& rho, const char* what, double tol = 1e-10);

/// (A + A^dagger) / 2
inline Operator hermitian_part(const Operator& a) { return 0.5 * (a + a.adjoint()); }

/// Matrix exponential. Hermitian and anti-Hermitian arguments go through a
/// unitary eigendecomposition; anything else uses scaling and squaring with
/// a Pade approximant.
Operator expm(const Operator& a);

double max_abs(const Operator& a);

double trace_norm(const Operator& a);

/// arg in (-pi, pi]
double principal_arg(cd z);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double x);

/// Least-squares slope of log(y) against log(x). Needs at least two points
/// with positive coordinates; nonpositive entries are skipped.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qgp

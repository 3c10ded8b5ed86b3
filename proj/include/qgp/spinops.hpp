// Spin algebra, cone rotations, coherent spin states and phase-space
// synchronization measures.
//
// All matrices use the basis order m = S, S-1, ..., -S (for spin 1:
// m = +1, 0, -1).
#pragma once

#include <vector>

#include "qgp/linalg.hpp"

namespace qgp {

struct SpinOperators {
  Operator sx, sy, sz, splus, sminus;
};

/// Spin-S operators for S = two_s / 2.
SpinOperators spin_operators(int two_s);

inline SpinOperators spin1_operators() { return spin_operators(2); }

/// Pauli matrices (twice the spin-1/2 operators), basis (up, down).
struct Pauli {
  Operator x, y, z;
};
Pauli pauli_matrices();

/// Quantization-axis cone: symmetry axis n(alpha) = (sin alpha, 0, cos alpha),
/// rotation frequency omega. The sign of omega selects the path direction.
struct ConeAxis {
  double alpha = 0.0;
  double omega = 0.0;
};

/// Precomputed R(alpha, t) = exp(-i omega t n(alpha).S). The generator is
/// diagonalized once, so each evaluation costs two small matrix products.
class ConeRotation {
 public:
  ConeRotation(ConeAxis axis, int two_s);

  Operator at(double t) const;
  const ConeAxis& axis() const { return axis_; }

 private:
  ConeAxis axis_;
  Operator eigvecs_;
  RealVector eigvals_;
};

Operator rotation_operator(ConeAxis axis, double t, int two_s = 2);

/// |theta, phi> = exp(-i phi Sz) exp(-i theta Sy) |S, m=S>.
StateVector coherent_spin_state(double theta, double phi, int two_s = 2);

/// ((2S+1)/4pi) <theta,phi|rho|theta,phi>; S is inferred from rho's size.
/// Throws InvalidDensityMatrix for non-density input.
double husimi_q(const Operator& rho, double theta, double phi);

struct PhaseDistribution {
  std::vector<double> phi_grid;
  std::vector<double> values;
};

inline constexpr int kDefaultThetaNodes = 129;

/// S(phi) = int_0^pi sin(theta) Q(theta, phi) dtheta - 1/(2pi) on the grid
/// phi_i = 2 pi i / n_phi. The theta integral uses the composite Simpson
/// rule with `n_theta` nodes.
PhaseDistribution phase_distribution(const Operator& rho, int n_phi, int n_theta = kDefaultThetaNodes);

struct SyncMeasure {
  double value = 0.0;    // max_phi S(phi)
  double phi_max = 0.0;  // in [0, 2pi)
};

/// Maximum of the shifted phase distribution, refined by a three-point
/// parabola around the discrete arg-max. A flat distribution reports
/// phi_max = 0.
SyncMeasure sync_measure_numeric(const Operator& rho, int n_phi = 256, int n_theta = kDefaultThetaNodes);

}  // namespace qgp

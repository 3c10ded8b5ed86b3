#include "qgp/spinops.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qgp/errors.hpp"
#include "qgp/quadrature.hpp"

namespace qgp {

namespace {

int two_s_from_dim(Index dim) { return static_cast<int>(dim) - 1; }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// sin(theta) * Q(theta, phi) without density checks; the caller validated rho.
double weighted_q(const Operator& rho, double theta, double phi, int two_s) {
  const StateVector v = coherent_spin_state(theta, phi, two_s);
  const double q = (v.adjoint() * rho * v)(0, 0).real();
  return (two_s + 1) / (4.0 * std::numbers::pi) * q;
}

}  // namespace

SpinOperators spin_operators(int two_s) {
  if (two_s < 1 || two_s + 1 > kMaxDim) throw std::invalid_argument("spin_operators: unsupported spin");
  const Index dim = two_s + 1;
  const double s = two_s / 2.0;
  SpinOperators ops;
  ops.sz = Operator::Zero(dim, dim);
  ops.splus = Operator::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const double m = s - static_cast<double>(i);
    ops.sz(i, i) = m;
    if (i > 0) ops.splus(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  ops.sminus = ops.splus.adjoint();
  ops.sx = 0.5 * (ops.splus + ops.sminus);
  ops.sy = -0.5 * kI * (ops.splus - ops.sminus);
  return ops;
}

Pauli pauli_matrices() {
  const SpinOperators half = spin_operators(1);
  return {2.0 * half.sx, 2.0 * half.sy, 2.0 * half.sz};
}

ConeRotation::ConeRotation(ConeAxis axis, int two_s) : axis_(axis) {
  const SpinOperators ops = spin_operators(two_s);
  const Operator generator = std::sin(axis.alpha) * ops.sx + std::cos(axis.alpha) * ops.sz;
  Eigen::SelfAdjointEigenSolver<Operator> es(generator);
  eigvecs_ = es.eigenvectors();
  eigvals_ = es.eigenvalues();
  // The spectrum of n.S is exactly {-S, ..., S}; snap away solver noise so
  // that full turns return the identity to rounding.
  for (Index i = 0; i < eigvals_.size(); ++i) eigvals_(i) = -two_s / 2.0 + static_cast<double>(i);
}

Operator ConeRotation::at(double t) const {
  const double angle = axis_.omega * t;
  StateVector phases(eigvals_.size());
  for (Index i = 0; i < eigvals_.size(); ++i) phases(i) = std::polar(1.0, -angle * eigvals_(i));
  return eigvecs_ * phases.asDiagonal() * eigvecs_.adjoint();
}

Operator rotation_operator(ConeAxis axis, double t, int two_s) { return ConeRotation(axis, two_s).at(t); }

StateVector coherent_spin_state(double theta, double phi, int two_s) {
  const Index dim = two_s + 1;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  StateVector v(dim);
  for (Index i = 0; i < dim; ++i) {
    // m = S - i; (S + m) = two_s - i, (S - m) = i
    const int up = two_s - static_cast<int>(i);
    const int down = static_cast<int>(i);
    const double m = two_s / 2.0 - static_cast<double>(i);
    const double amp = std::sqrt(binomial(two_s, up)) * std::pow(c, up) * std::pow(s, down);
    v(i) = amp * std::polar(1.0, -phi * m);
  }
  return v;
}

double husimi_q(const Operator& rho, double theta, double phi) {
  require_density_matrix(rho, "husimi_q");
  return weighted_q(rho, theta, phi, two_s_from_dim(rho.rows()));
}

PhaseDistribution phase_distribution(const Operator& rho, int n_phi, int n_theta) {
  if (n_phi < 16) throw std::invalid_argument("phase_distribution: n_phi must be >= 16");
  if (n_theta < 3) throw std::invalid_argument("phase_distribution: n_theta must be >= 3");
  require_density_matrix(rho, "phase_distribution");
  const int two_s = two_s_from_dim(rho.rows());
  const auto intervals = static_cast<std::size_t>(n_theta - 1);
  const std::vector<double> w = simpson_weights(intervals);
  const double h = std::numbers::pi / static_cast<double>(intervals);

  PhaseDistribution out;
  out.phi_grid.resize(n_phi);
  out.values.resize(n_phi);
  for (int i = 0; i < n_phi; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / n_phi;
    double acc = 0.0;
    for (std::size_t j = 0; j <= intervals; ++j) {
      const double theta = h * static_cast<double>(j);
      acc += w[j] * std::sin(theta) * weighted_q(rho, theta, phi, two_s);
    }
    out.phi_grid[i] = phi;
    out.values[i] = acc * h - 1.0 / (2.0 * std::numbers::pi);
  }
  return out;
}

SyncMeasure sync_measure_numeric(const Operator& rho, int n_phi, int n_theta) {
  const PhaseDistribution dist = phase_distribution(rho, n_phi, n_theta);
  const auto& f = dist.values;
  std::size_t best = 0;
  double lo = f[0];
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i] > f[best]) best = i;
    lo = std::min(lo, f[i]);
  }
  SyncMeasure out;
  if (f[best] - lo <= 1e-14) {
    out.value = f[best];
    return out;
  }
  const std::size_t n = f.size();
  const double fm = f[(best + n - 1) % n];
  const double f0 = f[best];
  const double fp = f[(best + 1) % n];
  const double curvature = fm - 2.0 * f0 + fp;
  double offset = 0.0;
  if (curvature < 0.0) offset = 0.5 * (fm - fp) / curvature;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  out.value = f0 - 0.25 * (fm - fp) * offset;
  double phi = dist.phi_grid[best] + offset * h;
  phi = std::fmod(phi, 2.0 * std::numbers::pi);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  out.phi_max = phi;
  return out;
}

}  // namespace qgp

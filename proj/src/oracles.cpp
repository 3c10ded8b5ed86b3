#include "qgp/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qgp/errors.hpp"

#include "qgp/spinops.hpp"

namespace qgp::oracles {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// c / (p_a - p_b), the first-order eigenvector mixing amplitude. Without a
// signal the coherence vanishes and so does the mixing, even for equal
// populations.
cd mixing(cd c, double p_a, double p_b, double T, const char* what) {
  if (T == 0.0) return 0.0;
  if (std::abs(p_a - p_b) < 1e-12) {
    throw DegeneratePopulations(std::string(what) + ": equal populations make the first-order phase singular", 0);
  }
  return c / (p_a - p_b);
}

}  // namespace

Populations vdp_populations(double gamma_g, double gamma_d) {
  if (!(gamma_g > 0.0) || !(gamma_d > 0.0)) throw std::invalid_argument("vdp_populations: rates must be positive");
  const double norm = 3.0 * gamma_d + gamma_g;
  return {gamma_g / norm, gamma_d / norm, 2.0 * gamma_d / norm};
}

Coherences vdp_coherences(double gamma_g, double gamma_d, double delta, double phi_sig) {
  if (!(gamma_g > 0.0) || !(gamma_d > 0.0)) throw std::invalid_argument("vdp_coherences: rates must be positive");
  const cd phase = -kI * std::polar(1.0, -phi_sig);
  const cd gain_term = 3.0 * gamma_g - 2.0 * kI * delta;
  const cd a = phase * ((4.0 + 3.0 * kSqrt2) * gamma_g * gamma_d - 2.0 * kSqrt2 * kI * gamma_d * delta -
                        kSqrt2 * gamma_g * gain_term);
  const cd b = 4.0 * (3.0 * gamma_d + gamma_g) * (gamma_d + gamma_g - kI * delta) * gain_term;
  const cd c0m1 = phase * gamma_d / (kSqrt2 * (3.0 * gamma_d + gamma_g) * gain_term);
  return {a / b, c0m1};
}

RwaSteadyState rwa_steady_state(double gamma_g, double gamma_d, double delta, double phi_sig) {
  return {vdp_populations(gamma_g, gamma_d), vdp_coherences(gamma_g, gamma_d, delta, phi_sig)};
}

Operator perturbative_steady_state(const RwaSteadyState& ss, double T) {
  Operator rho = Operator::Zero(3, 3);
  rho(0, 0) = ss.populations.p_plus1;
  rho(1, 1) = ss.populations.p_0;
  rho(2, 2) = ss.populations.p_minus1;
  rho(0, 1) = T * ss.coherences.c_plus1_0;
  rho(1, 0) = std::conj(rho(0, 1));
  rho(1, 2) = T * ss.coherences.c_0_minus1;
  rho(2, 1) = std::conj(rho(1, 2));
  return rho;
}

double sync_measure_closed_form(double T, const Coherences& c) {
  if (T < 0.0) throw std::invalid_argument("sync_measure_closed_form: T must be >= 0");
  return 3.0 / (8.0 * kSqrt2) * T * std::abs(c.c_plus1_0 + c.c_0_minus1);
}

double blockade_ratio() {
  const double b = 5.0 + 2.0 * kSqrt2;
  return (b + std::sqrt(b * b + 24.0)) / 6.0;
}

double gp_no_signal(double alpha, const Populations& p) {
  const double angle = 2.0 * std::numbers::pi * std::cos(alpha);
  const cd z = p.p_plus1 * std::polar(1.0, angle) + p.p_0 + p.p_minus1 * std::polar(1.0, -angle);
  return principal_arg(z);
}

double gp_cyclic_with_signal(const VdpParams& p) {
  const Populations pop = vdp_populations(p.gamma_g, p.gamma_d);
  const double omega = p.axis.omega;
  const double alpha = p.axis.alpha;
  const Coherences c = vdp_coherences(p.gamma_g, p.gamma_d, p.detuning() - omega * std::cos(alpha), p.phi_sig);
  const double k = kSqrt2 * p.T * std::sin(alpha) * omega / p.omega0;
  if (omega == 0.0) throw std::invalid_argument("gp_cyclic_with_signal: omega must be nonzero for a cyclic path");
  const double upper = mixing(c.c_plus1_0, pop.p_plus1, pop.p_0, p.T, "gp_cyclic_with_signal").imag();
  const double lower = mixing(c.c_0_minus1, pop.p_0, pop.p_minus1, p.T, "gp_cyclic_with_signal").imag();
  // Reversing the rotation reverses the solid angle.
  const double berry = std::copysign(2.0 * std::numbers::pi * std::cos(alpha), omega);
  const cd z = pop.p_plus1 * std::exp(kI * (berry + k * upper)) + pop.p_0 * std::exp(kI * k * (lower - upper)) +
               pop.p_minus1 * std::exp(kI * (-berry - k * lower));
  return principal_arg(z);
}

bool analytic_gp_valid(const VdpParams& p) {
  return std::abs(p.axis.omega / p.omega0) <= 0.1 && p.T / p.gamma_d < 1.0;
}

NoncyclicTerms gp_noncyclic_terms(const VdpParams& p, double tau) {
  const Populations pop = vdp_populations(p.gamma_g, p.gamma_d);
  const double omega = p.axis.omega;
  const double alpha = p.axis.alpha;
  const Coherences c = vdp_coherences(p.gamma_g, p.gamma_d, p.detuning() - omega * std::cos(alpha), p.phi_sig);
  const cd u10 = mixing(c.c_plus1_0, pop.p_plus1, pop.p_0, p.T, "gp_noncyclic");
  const cd u0m = mixing(c.c_0_minus1, pop.p_0, pop.p_minus1, p.T, "gp_noncyclic");

  const double half = omega * tau / 2.0;
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  const cd fwd = std::cos(half) - kI * ca * std::sin(half);  // cos - i cos(a) sin
  const cd bwd = std::cos(half) + kI * ca * std::sin(half);
  const cd drive = kSqrt2 * kI * p.T * sa * std::sin(half);

  NoncyclicTerms r;
  r.overlaps[0] = fwd * (fwd - drive * u10);
  r.overlaps[1] = ca * ca + sa * sa * std::cos(omega * tau) - drive * (-fwd * std::conj(u10) + bwd * u0m);
  r.overlaps[2] = bwd * (bwd + drive * std::conj(u0m));

  const double k = kSqrt2 * omega * p.T * sa / p.omega0;
  r.connections[0] = kI * (omega * tau * ca + k * u10.imag());
  r.connections[1] = kI * k * (u0m.imag() - u10.imag());
  r.connections[2] = -kI * (omega * tau * ca + k * u0m.imag());

  const double weights[3] = {pop.p_plus1, pop.p_0, pop.p_minus1};
  r.z = 0.0;
  for (int m = 0; m < 3; ++m) r.z += weights[m] * r.overlaps[m] * std::exp(r.connections[m]);
  r.gamma = principal_arg(r.z);
  return r;
}

double gp_noncyclic(const VdpParams& p, double tau) { return gp_noncyclic_terms(p, tau).gamma; }

QubitPhase qubit_dephasing_gp(const QubitDephasingParams& q) {
  if (!(q.Lambda > 0.0)) throw std::invalid_argument("qubit_dephasing_gp: Lambda must be positive");
  if (q.theta0 < 0.0 || q.theta0 > std::numbers::pi) throw std::invalid_argument("qubit_dephasing_gp: theta0 out of [0, pi]");
  QubitPhase out;
  constexpr double kPoleTol = 1e-12;
  if (q.theta0 < kPoleTol || std::numbers::pi - q.theta0 < kPoleTol) {
    out.degenerate = true;
    out.gamma = wrap_angle(-q.eta * q.tau / 2.0);
    out.pancharatnam = out.gamma;
    return out;
  }
  const double decay = std::exp(-q.Lambda * q.tau);
  const double theta_tau = std::fmod(std::atan(decay * std::tan(q.theta0)) + std::numbers::pi, std::numbers::pi);
  const cd arg_term = std::polar(1.0, -q.eta * q.tau / 2.0) * std::cos(theta_tau / 2.0) * std::cos(q.theta0 / 2.0) +
                      std::polar(1.0, q.eta * q.tau / 2.0) * std::sin(theta_tau / 2.0) * std::sin(q.theta0 / 2.0);
  const double c = std::cos(q.theta0);
  const double s = std::sin(q.theta0);
  const double root = std::sqrt(c * c + s * s * std::exp(-2.0 * q.Lambda * q.tau));
  out.pancharatnam = principal_arg(arg_term);
  out.log_term = q.eta / (4.0 * q.Lambda) * std::log((1.0 - c) * (root + c) / ((1.0 + c) * (root - c)));
  out.gamma = wrap_angle(out.pancharatnam + out.log_term);
  return out;
}

LindbladModel qubit_dephasing_model(double eta, double Lambda) {
  const Pauli s = pauli_matrices();
  return LindbladModel::constant((eta / 2.0) * s.z, {std::sqrt(Lambda / 2.0) * s.z});
}

Operator qubit_bloch_state(double theta0) {
  const Pauli s = pauli_matrices();
  return 0.5 * (identity(2) + std::sin(theta0) * s.x + std::cos(theta0) * s.z);
}

}  // namespace qgp::oracles

#include "qgp/mzi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qgp/errors.hpp"

namespace qgp {

namespace {

constexpr double kMinVisibility = 1e-12;
constexpr double kMaxPhasePerStep = 0.1;

Operator generator_matrix(const LindbladModel& model, double t, double energy_shift) {
  return -kI * effective_hamiltonian(model.at(t), energy_shift);
}

double operator_norm(const Operator& a) {
  const Eigen::MatrixXcd dense = a;
  return dense.operatorNorm();
}

}  // namespace

Operator effective_hamiltonian(const Generator& gen, double energy_shift) {
  const Index n = gen.hamiltonian.rows();
  Operator decay = Operator::Zero(n, n);
  for (const Operator& l : gen.jumps) decay += l.adjoint() * l;
  return gen.hamiltonian - 0.5 * kI * decay + energy_shift * identity(n);
}

long default_substeps(const LindbladModel& model, double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("default_substeps: tau must be >= 0");
  if (model.time_independent() || tau == 0.0) return 1;
  // Sample the generator norm on a coarse grid to size the step.
  double norm = 0.0;
  constexpr int kProbes = 64;
  for (int i = 0; i <= kProbes; ++i) {
    norm = std::max(norm, operator_norm(effective_hamiltonian(model.at(tau * i / kProbes))));
  }
  return std::max(1L, static_cast<long>(std::ceil(norm * tau / kMaxPhasePerStep)));
}

Operator effective_propagator(const LindbladModel& model, double tau, long n_sub, double energy_shift) {
  if (!(tau >= 0.0)) throw std::invalid_argument("effective_propagator: tau must be >= 0");
  if (tau == 0.0) return identity(model.dim());
  if (model.time_independent()) return expm(tau * generator_matrix(model, 0.0, energy_shift));
  if (n_sub <= 0) n_sub = default_substeps(model, tau);

  const double h = tau / static_cast<double>(n_sub);
  const double root3 = std::sqrt(3.0);
  const double c1 = 0.5 - root3 / 6.0;
  const double c2 = 0.5 + root3 / 6.0;
  const double a1 = 0.25 + root3 / 6.0;
  const double a2 = 0.25 - root3 / 6.0;

  Operator u = identity(model.dim());
  for (long s = 0; s < n_sub; ++s) {
    const double t = h * static_cast<double>(s);
    const Operator g1 = generator_matrix(model, t + c1 * h, energy_shift);
    const Operator g2 = generator_matrix(model, t + c2 * h, energy_shift);
    const Operator first = expm(h * (a1 * g1 + a2 * g2));
    const Operator second = expm(h * (a2 * g1 + a1 * g2));
    u = second * first * u;
  }
  return u;
}

cd interferometric_trace(const Operator& rho0, const LindbladModel& model, double tau, long n_sub,
                         double energy_shift) {
  if (rho0.rows() != model.dim() || rho0.cols() != model.dim()) {
    throw DimensionMismatch("interferometric_trace: state and model dimensions differ");
  }
  return (effective_propagator(model, tau, n_sub, energy_shift) * rho0).trace();
}

MziResult visibility_and_phase(const Operator& rho0, const LindbladModel& model, double tau, long n_sub,
                               double energy_shift) {
  require_density_matrix(rho0, "visibility_and_phase");
  MziResult r;
  r.trace = interferometric_trace(rho0, model, tau, n_sub, energy_shift);
  r.visibility = std::abs(r.trace);
  if (!(r.visibility >= kMinVisibility)) {
    std::ostringstream msg;
    msg << "interferometric phase ill-conditioned: visibility " << r.visibility << " at tau = " << tau;
    throw IllConditionedPhase(msg.str());
  }
  r.phase = principal_arg(r.trace);
  return r;
}

}  // namespace qgp

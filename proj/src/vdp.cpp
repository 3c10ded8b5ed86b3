#include "qgp/vdp.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qgp/errors.hpp"

namespace qgp {

double VdpParams::effective_tau() const {
  if (tau > 0.0) return tau;
  if (axis.omega == 0.0) throw std::invalid_argument("tau must be set when the axis does not rotate");
  return 2.0 * std::numbers::pi / std::abs(axis.omega);
}

std::pair<Operator, Operator> vdp_jump_operators(double gamma_g, double gamma_d) {
  const SpinOperators s = spin1_operators();
  const Operator g1 = std::sqrt(gamma_g / 2.0) * (std::sqrt(2.0) * s.sz * s.splus - s.splus * s.sz);
  const Operator g2 = std::sqrt(gamma_d / 2.0) * (s.sminus * s.sminus);
  return {g1, g2};
}

LindbladModel build_lab_frame_model(const VdpParams& p) {
  const SpinOperators s = spin1_operators();
  auto [g1, g2] = vdp_jump_operators(p.gamma_g, p.gamma_d);
  const Operator h0 = p.omega0 * s.sz;
  if (p.axis.omega == 0.0 && p.T == 0.0) return LindbladModel::constant(h0, {g1, g2});

  const ConeRotation rotation(p.axis, 2);
  return LindbladModel(
      3,
      [rotation, h0, sx = s.sx, g1 = g1, g2 = g2, p](double t) {
        const Operator r = rotation.at(t);
        const Operator rd = r.adjoint();
        Operator h = h0;
        if (p.T != 0.0) h += p.T * std::cos(p.omega_sig * t + p.phi_sig) * sx;
        Generator gen;
        gen.hamiltonian = r * h * rd;
        gen.jumps = {r * g1 * rd, r * g2 * rd};
        return gen;
      },
      false);
}

LindbladModel build_rwa_model(const VdpParams& p) {
  const SpinOperators s = spin1_operators();
  auto [g1, g2] = vdp_jump_operators(p.gamma_g, p.gamma_d);
  const double z_coeff = p.omega0 - p.omega_sig + p.axis.omega * std::cos(p.axis.alpha);
  const cd e = std::polar(1.0, -p.phi_sig);
  const Operator h = z_coeff * s.sz + (p.T / 4.0) * (e * s.splus + std::conj(e) * s.sminus);
  return LindbladModel::constant(h, {g1, g2});
}

double slowest_relaxation_rate(const LindbladModel& model, double t) {
  const SuperOperator sup = liouvillian_superoperator(model.at(t));
  Eigen::ComplexEigenSolver<SuperOperator> es(sup, false);
  const auto& lambda = es.eigenvalues();
  Index zero = 0;
  for (Index i = 1; i < lambda.size(); ++i)
    if (std::abs(lambda(i)) < std::abs(lambda(zero))) zero = i;
  double rate = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < lambda.size(); ++i)
    if (i != zero) rate = std::min(rate, std::abs(lambda(i).real()));
  return rate;
}

Operator lab_frame_initial_state(const VdpParams& p, const LabFrameOptions& options) {
  const LindbladModel rwa = build_rwa_model(p);
  Operator rho = steady_state(rwa);
  double burn = options.burn_in;
  if (burn < 0.0) burn = options.burn_in_efolds / slowest_relaxation_rate(rwa);
  if (burn == 0.0) return rho;

  const double dt = p.effective_tau() / static_cast<double>(p.n_step);
  const long n_burn = std::max(4L, static_cast<long>(std::ceil(burn / dt)));
  EvolveOptions ev;
  ev.t0 = -static_cast<double>(n_burn) * dt;
  return evolve_final(build_lab_frame_model(p), rho, static_cast<double>(n_burn) * dt, n_burn, ev);
}

GpResult lab_frame_geometric_phase(const VdpParams& p, const LabFrameOptions& options) {
  const Operator rho0 = lab_frame_initial_state(p, options);
  EvolveOptions ev;
  ev.validate_initial = false;
  return geometric_phase_of_evolution(build_lab_frame_model(p), rho0, p.effective_tau(), p.n_step, options.gp, ev);
}

}  // namespace qgp

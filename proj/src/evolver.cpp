#include "qgp/evolver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qgp/errors.hpp"

namespace qgp {

namespace {

// rho -> K rho + rho K^+ + sum_j L_j rho L_j^+ with K = -iH - sum_j L_j^+ L_j / 2.
struct PreparedGenerator {
  Operator k;
  std::vector<Operator> jumps;

  explicit PreparedGenerator(const Generator& gen) : k(-kI * gen.hamiltonian), jumps(gen.jumps) {
    for (const Operator& l : jumps) k.noalias() -= 0.5 * (l.adjoint() * l);
  }

  Operator apply(const Operator& rho) const {
    Operator out = k * rho;
    out += out.adjoint().eval();
    for (const Operator& l : jumps) out.noalias() += l * rho * l.adjoint();
    return out;
  }
};

void check_dims(const Generator& gen, Index dim) {
  if (gen.hamiltonian.rows() != dim || gen.hamiltonian.cols() != dim) {
    throw DimensionMismatch("Lindblad model: Hamiltonian dimension does not match the state");
  }
  for (const Operator& l : gen.jumps) {
    if (l.rows() != dim || l.cols() != dim) throw DimensionMismatch("Lindblad model: jump operator dimension mismatch");
  }
}

SuperOperator kron(const Operator& a, const Operator& b) {
  const Index na = a.rows();
  const Index nb = b.rows();
  SuperOperator out(na * nb, na * nb);
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
  return out;
}

}  // namespace

LindbladModel::LindbladModel(Index dim, Sampler sampler, bool time_independent)
    : dim_(dim), sampler_(std::move(sampler)), time_independent_(time_independent) {}

LindbladModel LindbladModel::constant(Operator hamiltonian, std::vector<Operator> jumps) {
  Generator gen{std::move(hamiltonian), std::move(jumps)};
  const Index dim = gen.hamiltonian.rows();
  check_dims(gen, dim);
  return LindbladModel(dim, [gen = std::move(gen)](double) { return gen; }, true);
}

Generator LindbladModel::at(double t) const { return sampler_(t); }

LindbladModel LindbladModel::with_hamiltonian_shift(const Operator& shift) const {
  if (shift.rows() != dim_ || shift.cols() != dim_) throw DimensionMismatch("with_hamiltonian_shift: size mismatch");
  return LindbladModel(
      dim_,
      [inner = sampler_, shift](double t) {
        Generator g = inner(t);
        g.hamiltonian += shift;
        return g;
      },
      time_independent_);
}

Operator liouvillian_apply(const Generator& gen, const Operator& rho) {
  check_dims(gen, rho.rows());
  if (rho.rows() != rho.cols()) throw DimensionMismatch("liouvillian_apply: rho is not square");
  return PreparedGenerator(gen).apply(rho);
}

Operator liouvillian_apply(const LindbladModel& model, const Operator& rho, double t) {
  if (rho.rows() != model.dim()) throw DimensionMismatch("liouvillian_apply: rho dimension differs from model");
  return liouvillian_apply(model.at(t), rho);
}

void evolve_stream(const LindbladModel& model, const Operator& rho0, double tau, long n_step,
                   const StateVisitor& visit, const EvolveOptions& options) {
  if (n_step < 4) throw std::invalid_argument("evolve: n_step must be >= 4");
  if (rho0.rows() != model.dim() || rho0.cols() != model.dim()) {
    throw DimensionMismatch("evolve: initial state dimension differs from model");
  }
  if (options.validate_initial) require_density_matrix(rho0, "evolve: initial state");

  const double dt = tau / static_cast<double>(n_step);
  const double half = 0.5 * dt;
  Operator rho = rho0;
  if (visit) visit(0, options.t0, rho);

  const bool frozen = model.time_independent();
  PreparedGenerator start(model.at(options.t0));
  check_dims(model.at(options.t0), model.dim());
  for (long j = 0; j < n_step; ++j) {
    const double t = options.t0 + static_cast<double>(j) * dt;
    if (frozen) {
      const Operator k1 = start.apply(rho);
      const Operator k2 = start.apply(rho + half * k1);
      const Operator k3 = start.apply(rho + half * k2);
      const Operator k4 = start.apply(rho + dt * k3);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } else {
      const PreparedGenerator mid(model.at(t + half));
      PreparedGenerator end(model.at(options.t0 + static_cast<double>(j + 1) * dt));
      const Operator k1 = start.apply(rho);
      const Operator k2 = mid.apply(rho + half * k1);
      const Operator k3 = mid.apply(rho + half * k2);
      const Operator k4 = end.apply(rho + dt * k3);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      start = std::move(end);
    }
    rho = hermitian_part(rho);

    const double drift = std::abs(rho.trace() - 1.0);
    if (!(drift <= options.trace_abort)) {
      std::ostringstream msg;
      msg << "evolve: trace drift " << drift << " at step " << (j + 1) << " (t = " << (t + dt)
          << "); reduce the step size";
      throw StepInstability(msg.str());
    }
    if (visit) visit(j + 1, options.t0 + static_cast<double>(j + 1) * dt, rho);
  }
}

Trajectory evolve(const LindbladModel& model, const Operator& rho0, double tau, long n_step,
                  const EvolveOptions& options) {
  Trajectory traj;
  traj.t0 = options.t0;
  traj.dt = tau / static_cast<double>(n_step);
  traj.n_step = n_step;
  traj.states.reserve(static_cast<std::size_t>(n_step) + 1);
  evolve_stream(
      model, rho0, tau, n_step, [&](long, double, const Operator& rho) { traj.states.push_back(rho); }, options);
  return traj;
}

Operator evolve_final(const LindbladModel& model, const Operator& rho0, double tau, long n_step,
                      const EvolveOptions& options) {
  Operator last = rho0;
  evolve_stream(
      model, rho0, tau, n_step,
      [&](long j, double, const Operator& rho) {
        if (j == n_step) last = rho;
      },
      options);
  return last;
}

SuperOperator liouvillian_superoperator(const Generator& gen) {
  const Index dim = gen.hamiltonian.rows();
  check_dims(gen, dim);
  const PreparedGenerator p(gen);
  const Operator id = identity(dim);
  SuperOperator s = kron(id, p.k) + kron(p.k.conjugate(), id);
  for (const Operator& l : p.jumps) s += kron(l.conjugate(), l);
  return s;
}

Operator steady_state(const LindbladModel& model, double t, const SteadyStateOptions& options) {
  const Generator gen = model.at(t);
  const Index dim = model.dim();
  const SuperOperator s = liouvillian_superoperator(gen);
  Eigen::ComplexEigenSolver<SuperOperator> es(s);
  if (es.info() != Eigen::Success) throw NumericalError("steady_state: eigendecomposition failed");

  const auto& lambda = es.eigenvalues();
  Index best = 0;
  for (Index i = 1; i < lambda.size(); ++i)
    if (std::abs(lambda(i)) < std::abs(lambda(best))) best = i;
  double next = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < lambda.size(); ++i)
    if (i != best) next = std::min(next, std::abs(lambda(i)));

  if (std::abs(lambda(best)) > options.zero_tol || next < options.gap_tol) {
    std::ostringstream msg;
    msg << "steady_state: no isolated zero eigenvalue (|lambda_min| = " << std::abs(lambda(best))
        << ", next |lambda| = " << next << ")";
    throw NonUniqueSteadyState(msg.str());
  }

  const Eigen::VectorXcd v = es.eigenvectors().col(best);
  Operator rho(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) rho(i, j) = v(i + dim * j);
  const cd tr = rho.trace();
  if (std::abs(tr) < 1e-12) throw NonUniqueSteadyState("steady_state: null vector is traceless");
  rho = hermitian_part(rho / tr);
  return rho;
}

}  // namespace qgp

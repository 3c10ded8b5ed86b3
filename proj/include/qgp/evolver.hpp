// Lindblad master-equation models, fixed-step RK4 propagation on an
// equidistant grid, and steady states via the superoperator null space.
#pragma once

#include <functional>
#include <vector>

#include "qgp/linalg.hpp"

namespace qgp {

/// Hamiltonian and jump operators at one instant. Jump operators carry
/// their rates as prefactors.
struct Generator {
  Operator hamiltonian;
  std::vector<Operator> jumps;
};

class LindbladModel {
 public:
  using Sampler = std::function<Generator(double)>;

  LindbladModel(Index dim, Sampler sampler, bool time_independent);

  static LindbladModel constant(Operator hamiltonian, std::vector<Operator> jumps);

  Index dim() const { return dim_; }
  bool time_independent() const { return time_independent_; }

  Generator at(double t) const;
  Operator hamiltonian_at(double t) const { return at(t).hamiltonian; }
  std::vector<Operator> jump_operators_at(double t) const { return at(t).jumps; }

  /// Same jump operators, Hamiltonian shifted by `shift` (any operator of
  /// matching size).
  LindbladModel with_hamiltonian_shift(const Operator& shift) const;

 private:
  Index dim_;
  Sampler sampler_;
  bool time_independent_;
};

/// -i[H, rho] + sum_j D[L_j] rho with D[L] rho = L rho L^+ - {L^+ L, rho}/2.
Operator liouvillian_apply(const Generator& gen, const Operator& rho);
Operator liouvillian_apply(const LindbladModel& model, const Operator& rho, double t);

struct Trajectory {
  double t0 = 0.0;
  double dt = 0.0;
  long n_step = 0;
  std::vector<Operator> states;  // n_step + 1 entries, states[j] at t0 + j dt

  double time(long j) const { return t0 + static_cast<double>(j) * dt; }
};

/// Receives every grid state in order; states[0] is the initial state.
using StateVisitor = std::function<void(long j, double t, const Operator& rho)>;

struct EvolveOptions {
  double t0 = 0.0;
  double trace_abort = 1e-6;
  bool validate_initial = true;
};

/// Classical RK4 with dt = tau / n_step, re-symmetrizing rho after each
/// step. Streams states to `visit` so long runs need O(1) memory. Throws
/// StepInstability when |Tr rho - 1| exceeds options.trace_abort.
void evolve_stream(const LindbladModel& model, const Operator& rho0, double tau, long n_step,
                   const StateVisitor& visit, const EvolveOptions& options = {});

/// Materialized variant of evolve_stream.
Trajectory evolve(const LindbladModel& model, const Operator& rho0, double tau, long n_step,
                  const EvolveOptions& options = {});

/// Propagates without visiting intermediate states; returns the final state.
Operator evolve_final(const LindbladModel& model, const Operator& rho0, double tau, long n_step,
                      const EvolveOptions& options = {});

/// Column-stacked superoperator: vec(L rho) = S vec(rho), vec index
/// i + dim * j for rho(i, j).
SuperOperator liouvillian_superoperator(const Generator& gen);

struct SteadyStateOptions {
  double zero_tol = 1e-10;
  double gap_tol = 1e-8;
};

/// Trace-one Hermitian null vector of the Liouvillian at time t. Throws
/// NonUniqueSteadyState when the smallest eigenvalue is not isolated at zero.
Operator steady_state(const LindbladModel& model, double t = 0.0, const SteadyStateOptions& options = {});

}  // namespace qgp

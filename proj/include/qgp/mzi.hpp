// Interferometric visibility and phase of a system passed through one arm
// of a Mach-Zehnder interferometer while it evolves nonunitarily. Only
// the no-jump part of the evolution interferes, so the measured quantity
// is the trace of the non-Hermitian propagator against the initial state.
#pragma once

#include "qgp/evolver.hpp"
#include "qgp/linalg.hpp"

namespace qgp {

/// H_eff(t) = H(t) - (i/2) sum_j L_j^+ L_j + energy_shift * 1
Operator effective_hamiltonian(const Generator& gen, double energy_shift = 0.0);

/// Sub-interval count keeping ||H_eff|| dt <= 0.1 (at least one).
long default_substeps(const LindbladModel& model, double tau);

/// Time-ordered exp(-i int_0^tau H_eff dt). Time-independent models use a
/// single exponential; otherwise each of the n_sub sub-intervals applies
/// the fourth-order commutator-free Magnus step built from two Gauss-point
/// samples. n_sub <= 0 selects default_substeps.
Operator effective_propagator(const LindbladModel& model, double tau, long n_sub = 0, double energy_shift = 0.0);

struct MziResult {
  double visibility = 0.0;  // |Tr(U rho0)|
  double phase = 0.0;       // arg Tr(U rho0), (-pi, pi]
  cd trace;
};

/// Tr(U_eff(tau) rho0) without the conditioning check.
cd interferometric_trace(const Operator& rho0, const LindbladModel& model, double tau, long n_sub = 0,
                         double energy_shift = 0.0);

/// Throws InvalidDensityMatrix for a bad rho0 and IllConditionedPhase when
/// the visibility is below 1e-12.
MziResult visibility_and_phase(const Operator& rho0, const LindbladModel& model, double tau, long n_sub = 0,
                               double energy_shift = 0.0);

}  // namespace qgp

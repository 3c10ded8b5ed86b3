// Closed-form reference results for the van der Pol oscillator and the
// dephasing qubit. Used as test oracles and as the fast analytic GP.
#pragma once

#include <array>

#include "qgp/evolver.hpp"
#include "qgp/linalg.hpp"
#include "qgp/vdp.hpp"

namespace qgp::oracles {

struct Populations {
  double p_plus1 = 0.0, p_0 = 0.0, p_minus1 = 0.0;
};

/// (gamma_g, gamma_d, 2 gamma_d) / (3 gamma_d + gamma_g)
Populations vdp_populations(double gamma_g, double gamma_d);

/// First-order coherences per unit signal strength: rho_{+1,0} = T c_plus1_0,
/// rho_{0,-1} = T c_0_minus1.
struct Coherences {
  cd c_plus1_0;
  cd c_0_minus1;
};

Coherences vdp_coherences(double gamma_g, double gamma_d, double delta, double phi_sig);

struct RwaSteadyState {
  Populations populations;
  Coherences coherences;
};

RwaSteadyState rwa_steady_state(double gamma_g, double gamma_d, double delta, double phi_sig);

/// diag(p) + T * (coherence matrix), valid to first order in T.
Operator perturbative_steady_state(const RwaSteadyState& ss, double T);

/// (3 / (8 sqrt2)) T |c_{+1,0} + c_{0,-1}|
double sync_measure_closed_form(double T, const Coherences& c);

/// gamma_g / gamma_d at which c_{+1,0} = -c_{0,-1} on resonance: the positive
/// root of 3 x^2 - (5 + 2 sqrt2) x - 2 = 0.
double blockade_ratio();

/// arg[p_{+1} e^{2 pi i cos a} + p_0 + p_{-1} e^{-2 pi i cos a}]
double gp_no_signal(double alpha, const Populations& p);

/// Cyclic GP with signal, coherences evaluated at the shifted detuning
/// delta - omega cos(alpha). The solid-angle term follows the sign of
/// omega; omega = 0 throws std::invalid_argument. Equal neighbouring
/// populations with T != 0 throw DegeneratePopulations.
double gp_cyclic_with_signal(const VdpParams& p);

/// True inside the small-rotation, weak-signal regime where the analytic
/// GP expressions apply (omega / omega0 <= 0.1, T / gamma_d < 1).
bool analytic_gp_valid(const VdpParams& p);

/// Non-cyclic GP at time tau assembled from the resonant-drive overlap and
/// connection-integral expressions. Per eigenstate m = +1, 0, -1:
struct NoncyclicTerms {
  std::array<cd, 3> overlaps;     // <phi_m(0)|phi_m(tau)>
  std::array<cd, 3> connections;  // -int_0^tau <phi_m|d/dt phi_m> dt
  cd z;
  double gamma = 0.0;
};

NoncyclicTerms gp_noncyclic_terms(const VdpParams& p, double tau);
double gp_noncyclic(const VdpParams& p, double tau);

struct QubitDephasingParams {
  double eta = 1.0;
  double Lambda = 0.2;
  double theta0 = 0.0;
  double tau = 0.0;
};

struct QubitPhase {
  double gamma = 0.0;           // (-pi, pi]
  double pancharatnam = 0.0;    // arg term
  double log_term = 0.0;        // (eta / 4 Lambda) log(...)
  bool degenerate = false;      // theta0 at a pole; gamma continued as -eta tau / 2
};

/// Geometric phase of the pure-dephasing qubit at time tau.
QubitPhase qubit_dephasing_gp(const QubitDephasingParams& q);

/// H = (eta/2) sigma_z, single jump operator sqrt(Lambda/2) sigma_z.
LindbladModel qubit_dephasing_model(double eta, double Lambda);

/// (1 + r.sigma) / 2 with r = (sin theta0, 0, cos theta0).
Operator qubit_bloch_state(double theta0);

}  // namespace qgp::oracles

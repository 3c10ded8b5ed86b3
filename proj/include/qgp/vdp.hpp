// Spin-1 quantum van der Pol limit-cycle oscillator with a rotating
// quantization axis and an external signal.
#pragma once

#include <numbers>
#include <utility>

#include "qgp/evolver.hpp"
#include "qgp/gp_kinematic.hpp"
#include "qgp/spinops.hpp"

namespace qgp {

/// Frequencies and rates share one unit (conventionally gamma_d = 1).
struct VdpParams {
  double omega0 = 1.0;   // natural frequency, H0 = omega0 Sz
  double gamma_g = 0.5;  // one-excitation gain
  double gamma_d = 1.0;  // two-excitation damping
  ConeAxis axis{std::numbers::pi / 4.0, 0.05};
  double T = 0.0;          // signal strength
  double omega_sig = 1.0;  // signal frequency
  double phi_sig = 0.0;    // signal phase
  double tau = 0.0;        // evolution time; <= 0 means one full turn 2 pi / |omega|
  long n_step = 200000;

  double detuning() const { return omega_sig - omega0; }
  double effective_tau() const;
};

/// Gamma_1 = sqrt(gamma_g/2) (sqrt2 Sz S+ - S+ Sz), Gamma_2 = sqrt(gamma_d/2) S-^2.
std::pair<Operator, Operator> vdp_jump_operators(double gamma_g, double gamma_d);

/// Lab frame: H(t) = R (omega0 Sz + T cos(omega_sig t + phi_sig) Sx) R^+ and
/// jumps R Gamma_j R^+ with R = R(alpha, t).
LindbladModel build_lab_frame_model(const VdpParams& p);

/// Frame rotating with the signal after the rotating-wave approximation:
/// H = (omega0 - omega_sig + omega cos alpha) Sz + (T/4)(e^{-i phi} S+ + e^{i phi} S-),
/// unrotated jump operators.
LindbladModel build_rwa_model(const VdpParams& p);

/// Smallest nonzero |Re lambda| of the Liouvillian at time t.
double slowest_relaxation_rate(const LindbladModel& model, double t = 0.0);

struct LabFrameOptions {
  /// Relaxation time simulated at negative times before t = 0. Negative
  /// selects burn_in_efolds / (slowest relaxation rate of the RWA model).
  double burn_in = -1.0;
  double burn_in_efolds = 16.0;
  GpOptions gp;
};

/// State at t = 0 of the lab-frame model after relaxing from the RWA steady
/// state over [-burn_in, 0] with the run's step size.
Operator lab_frame_initial_state(const VdpParams& p, const LabFrameOptions& options = {});

/// Lab-frame evolution over [0, tau] streamed into the geometric phase.
GpResult lab_frame_geometric_phase(const VdpParams& p, const LabFrameOptions& options = {});

}  // namespace qgp

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qgp/errors.hpp"
#include "qgp/evolver.hpp"
#include "qgp/oracles.hpp"
#include "qgp/spinops.hpp"
#include "qgp/vdp.hpp"
#include "support.hpp"

using namespace qgp;

TEST_SUITE("evolver") {
  TEST_CASE("Liouvillian output is traceless and Hermitian") {
    const auto [g1, g2] = vdp_jump_operators(0.3, 1.1);
    const Generator gen{test::random_hermitian(3, 2), {g1, g2}};
    const Operator rho = test::random_density_matrix(3, 9);
    const Operator d = liouvillian_apply(gen, rho);
    CHECK(std::abs(d.trace()) < 1e-14);
    CHECK(hermiticity_defect(d) < 1e-14);
  }

  TEST_CASE("superoperator reproduces liouvillian_apply") {
    const auto [g1, g2] = vdp_jump_operators(0.7, 0.4);
    const Generator gen{test::random_hermitian(3, 4), {g1, g2}};
    const Operator rho = test::random_density_matrix(3, 6);
    const SuperOperator s = liouvillian_superoperator(gen);
    Eigen::VectorXcd v(9);
    for (Index j = 0; j < 3; ++j)
      for (Index i = 0; i < 3; ++i) v(i + 3 * j) = rho(i, j);
    const Eigen::VectorXcd out = s * v;
    const Operator ref = liouvillian_apply(gen, rho);
    for (Index j = 0; j < 3; ++j)
      for (Index i = 0; i < 3; ++i) CHECK(std::abs(out(i + 3 * j) - ref(i, j)) < 1e-13);
  }

  TEST_CASE("dephasing qubit: coherence decays at rate Lambda, populations conserved") {
    const double eta = 1.0, lambda = 0.2, tau = 3.0;
    const LindbladModel m = oracles::qubit_dephasing_model(eta, lambda);
    const Operator rho0 = oracles::qubit_bloch_state(std::numbers::pi / 3.0);
    const Operator rho = evolve_final(m, rho0, tau, 3000);
    const cd expected = rho0(0, 1) * std::exp(-(lambda + kI * eta) * tau);
    CHECK(std::abs(rho(0, 1) - expected) < 1e-12);
    CHECK(std::abs(rho(0, 0) - rho0(0, 0)) < 1e-14);
  }

  TEST_CASE("RK4 converges at fourth order") {
    VdpParams p;
    p.omega0 = 2.0;
    p.T = 0.3;
    p.omega_sig = 1.9;
    const LindbladModel m = build_lab_frame_model(p);
    const Operator rho0 = test::random_density_matrix(3, 12);
    const double tau = 4.0;
    const Operator ref = evolve_final(m, rho0, tau, 6400);
    std::vector<double> ns, errs;
    for (long n : {50, 100, 200, 400}) {
      ns.push_back(static_cast<double>(n));
      errs.push_back(max_abs(evolve_final(m, rho0, tau, n) - ref));
    }
    CHECK(loglog_slope(ns, errs) == doctest::Approx(-4.0).epsilon(0.08));
  }

  TEST_CASE("trajectory bookkeeping and streaming agree") {
    const LindbladModel m = oracles::qubit_dephasing_model(1.0, 0.5);
    const Operator rho0 = oracles::qubit_bloch_state(1.0);
    const Trajectory traj = evolve(m, rho0, 2.0, 40);
    CHECK(traj.states.size() == 41u);
    CHECK(traj.time(40) == doctest::Approx(2.0));
    long visits = 0;
    evolve_stream(m, rho0, 2.0, 40, [&](long j, double t, const Operator& rho) {
      CHECK(t == doctest::Approx(traj.time(j)));
      CHECK(max_abs(rho - traj.states[static_cast<std::size_t>(j)]) == 0.0);
      ++visits;
    });
    CHECK(visits == 41);
  }

  TEST_CASE("evolution preserves trace and positivity") {
    VdpParams p;
    p.omega0 = 1.0;
    p.T = 0.4;
    p.axis = {1.0, 0.3};
    const Trajectory traj = evolve(build_lab_frame_model(p), test::random_density_matrix(3, 21), 20.0, 2000);
    for (const Operator& rho : traj.states) CHECK(is_density_matrix(rho, 1e-10));
  }

  TEST_CASE("invalid input and unstable steps raise") {
    const LindbladModel m = oracles::qubit_dephasing_model(1.0, 0.2);
    CHECK_THROWS_AS(evolve(m, identity(2), 1.0, 10), InvalidDensityMatrix);
    CHECK_THROWS_AS(evolve(m, identity(3) / 3.0, 1.0, 10), DimensionMismatch);
    Operator lower = Operator::Zero(2, 2);
    lower(1, 0) = std::sqrt(400.0);
    const LindbladModel stiff = LindbladModel::constant(Operator::Zero(2, 2), {lower});
    CHECK_THROWS_AS(evolve(stiff, oracles::qubit_bloch_state(1.0), 10.0, 5), StepInstability);
  }

  TEST_CASE("steady state of the RWA model without signal has the vdP populations") {
    VdpParams p;
    p.gamma_g = 0.3;
    p.gamma_d = 1.0;
    const Operator ss = steady_state(build_rwa_model(p));
    const auto pop = oracles::vdp_populations(0.3, 1.0);
    CHECK(std::abs(ss(0, 0).real() - pop.p_plus1) < 1e-12);
    CHECK(std::abs(ss(1, 1).real() - pop.p_0) < 1e-12);
    CHECK(std::abs(ss(2, 2).real() - pop.p_minus1) < 1e-12);
    CHECK(is_density_matrix(ss, 1e-12));
  }

  TEST_CASE("a closed system has no unique steady state") {
    const LindbladModel m = LindbladModel::constant(spin1_operators().sz, {});
    CHECK_THROWS_AS(steady_state(m), NonUniqueSteadyState);
  }
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qgp/errors.hpp"
#include "qgp/mzi.hpp"
#include "qgp/oracles.hpp"
#include "qgp/spinops.hpp"
#include "qgp/vdp.hpp"
#include "support.hpp"

using namespace qgp;

namespace {

constexpr double kPi = std::numbers::pi;

// H(t) = e^{-i w t sz/2} ((eta/2) sx + (d/2) sz) e^{i w t sz/2}, one dephasing
// jump of rate Lambda. The rotating frame gives the propagator exactly.
struct RotatingQubit {
  double eta = 0.8, d = 0.3, w = 1.7, Lambda = 0.4;

  LindbladModel model() const {
    const Pauli s = pauli_matrices();
    const Operator h0 = 0.5 * eta * s.x + 0.5 * d * s.z;
    const Operator jump = std::sqrt(Lambda / 2.0) * s.z;
    const double w_ = w;
    return LindbladModel(
        2,
        [=](double t) {
          const Operator r = expm(-kI * (0.5 * w_ * t) * s.z);
          return Generator{r * h0 * r.adjoint(), {jump}};
        },
        false);
  }
  Operator propagator(double t) const {
    const Pauli s = pauli_matrices();
    const Operator frame = 0.5 * eta * s.x + 0.5 * (d - w) * s.z;
    return std::exp(-Lambda * t / 4.0) * expm(-kI * (0.5 * w * t) * s.z) * expm(-kI * t * frame);
  }
};

}  // namespace

TEST_SUITE("mzi") {
  TEST_CASE("effective Hamiltonian") {
    const Pauli s = pauli_matrices();
    const Generator g{s.x, {std::sqrt(0.5) * s.z, s.y}};
    const Operator expected = s.x - 0.5 * kI * (0.5 * identity(2) + identity(2)) + 0.25 * identity(2);
    CHECK(max_abs(effective_hamiltonian(g, 0.25) - expected) < 1e-15);
  }

  TEST_CASE("closed system: trace of the unitary") {
    const Operator h = test::random_hermitian(3, 7);
    const Operator rho = test::random_density_matrix(3, 8);
    const LindbladModel m = LindbladModel::constant(h, {});
    const double tau = 1.3;
    const cd expected = (expm(-kI * tau * h) * rho).trace();
    const MziResult r = visibility_and_phase(rho, m, tau);
    CHECK(std::abs(r.trace - expected) < 1e-13);
    CHECK(r.visibility == doctest::Approx(std::abs(expected)));
    CHECK(r.phase == doctest::Approx(principal_arg(expected)));
  }

  TEST_CASE("dephasing qubit no-jump closed form") {
    const double eta = 1.0, Lambda = 0.2, tau = 3.0;
    const Operator rho = oracles::qubit_bloch_state(0.7);
    const LindbladModel m = oracles::qubit_dephasing_model(eta, Lambda);
    const cd expected = std::exp(-Lambda * tau / 4.0) *
                        (rho(0, 0) * std::exp(-kI * eta * tau / 2.0) + rho(1, 1) * std::exp(kI * eta * tau / 2.0));
    CHECK(std::abs(interferometric_trace(rho, m, tau) - expected) < 1e-14);
  }

  TEST_CASE("diagonal generator") {
    Operator h = Operator::Zero(3, 3), l = Operator::Zero(3, 3);
    h.diagonal() << 0.4, -0.1, 1.2;
    l.diagonal() << 0.3, 0.0, cd(0.1, 0.2);
    const Operator rho = test::random_density_matrix(3, 3);
    const double tau = 2.2;
    cd expected = 0.0;
    for (Index k = 0; k < 3; ++k)
      expected += rho(k, k) * std::exp(-kI * tau * (h(k, k) - 0.5 * kI * std::norm(l(k, k))));
    CHECK(std::abs(interferometric_trace(rho, LindbladModel::constant(h, {l}), tau) - expected) < 1e-14);
  }

  TEST_CASE("visibility never exceeds one") {
    const auto [g1, g2] = vdp_jump_operators(0.5, 1.0);
    const LindbladModel m = LindbladModel::constant(test::random_hermitian(3, 11), {g1, g2});
    for (int seed = 0; seed < 5; ++seed) {
      const Operator rho = test::random_density_matrix(3, 100 + seed);
      for (double tau : {0.1, 1.0, 5.0}) CHECK(std::abs(interferometric_trace(rho, m, tau)) <= 1.0 + 1e-14);
    }
  }

  TEST_CASE("zero duration") {
    const MziResult r =
        visibility_and_phase(test::random_density_matrix(2, 1), oracles::qubit_dephasing_model(1.0, 0.2), 0.0);
    CHECK(r.visibility == doctest::Approx(1.0));
    CHECK(r.phase == doctest::Approx(0.0).scale(1.0));
  }

  TEST_CASE("energy shift chi/tau moves the phase by -chi") {
    const Operator rho = oracles::qubit_bloch_state(0.4);
    const LindbladModel m = oracles::qubit_dephasing_model(1.0, 0.2);
    const double tau = 2.0;
    const MziResult base = visibility_and_phase(rho, m, tau);
    for (double chi : {0.3, -1.1, 2.5}) {
      const MziResult shifted = visibility_and_phase(rho, m, tau, 0, chi / tau);
      CHECK(shifted.visibility == doctest::Approx(base.visibility));
      CHECK(wrap_angle(shifted.phase - base.phase + chi) == doctest::Approx(0.0).scale(1.0));
    }
  }

  TEST_CASE("time-dependent propagator against the rotating-frame solution") {
    const RotatingQubit q;
    const LindbladModel m = q.model();
    const double tau = 4.0;
    const Operator exact = q.propagator(tau);
    CHECK(max_abs(effective_propagator(m, tau) - exact) < 1e-5);
    std::vector<double> ns, errs;
    for (long n : {10, 20, 40, 80}) {
      ns.push_back(static_cast<double>(n));
      errs.push_back(max_abs(effective_propagator(m, tau, n) - exact));
    }
    CHECK(loglog_slope(ns, errs) == doctest::Approx(-4.0).epsilon(0.08));
    const Operator rho = oracles::qubit_bloch_state(1.1);
    CHECK(std::abs(interferometric_trace(rho, m, tau, 400) - (exact * rho).trace()) < 1e-9);
  }

  TEST_CASE("substep defaults") {
    CHECK(default_substeps(oracles::qubit_dephasing_model(1.0, 0.2), 50.0) == 1);
    const RotatingQubit q;
    const long n = default_substeps(q.model(), 10.0);
    CHECK(n >= 10);
  }

  TEST_CASE("failures") {
    const Pauli s = pauli_matrices();
    const LindbladModel flip = LindbladModel::constant(0.5 * s.x, {});
    Operator down = Operator::Zero(2, 2);
    down(1, 1) = 1.0;
    CHECK_THROWS_AS(visibility_and_phase(down, flip, kPi), IllConditionedPhase);
    CHECK(std::abs(interferometric_trace(down, flip, kPi)) < 1e-12);
    CHECK_THROWS_AS(visibility_and_phase(2.0 * down, flip, 1.0), InvalidDensityMatrix);
    CHECK_THROWS_AS(visibility_and_phase(identity(3) / 3.0, flip, 1.0), DimensionMismatch);
  }
}

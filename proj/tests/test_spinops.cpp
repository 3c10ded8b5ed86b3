#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qgp/errors.hpp"
#include "qgp/oracles.hpp"
#include "qgp/spinops.hpp"
#include "support.hpp"

using namespace qgp;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("spinops") {
  TEST_CASE("spin-1 ladder matrix element and algebra") {
    const SpinOperators s = spin1_operators();
    CHECK(std::abs(s.splus(0, 1) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(s.splus(1, 2) - std::sqrt(2.0)) < 1e-15);
    CHECK(max_abs(commutator(s.sx, s.sy) - kI * s.sz) < 1e-14);
    CHECK(max_abs(commutator(s.sy, s.sz) - kI * s.sx) < 1e-14);
    CHECK(max_abs(commutator(s.sz, s.sx) - kI * s.sy) < 1e-14);
    CHECK(max_abs(s.sx * s.sx + s.sy * s.sy + s.sz * s.sz - 2.0 * identity(3)) < 1e-14);
    CHECK(s.sz(0, 0).real() == 1.0);
    CHECK(s.sz(1, 1).real() == 0.0);
    CHECK(s.sz(2, 2).real() == -1.0);
  }

  TEST_CASE("Casimir for other spins") {
    for (int two_s : {1, 2, 3}) {
      const SpinOperators s = spin_operators(two_s);
      const double S = two_s / 2.0;
      const Index d = two_s + 1;
      CHECK(max_abs(s.sx * s.sx + s.sy * s.sy + s.sz * s.sz - S * (S + 1.0) * identity(d)) < 1e-13);
    }
  }

  TEST_CASE("Pauli matrices are twice the spin-1/2 operators") {
    const Pauli p = pauli_matrices();
    const SpinOperators s = spin_operators(1);
    CHECK(max_abs(p.x - 2.0 * s.sx) < 1e-15);
    CHECK(max_abs(p.y - 2.0 * s.sy) < 1e-15);
    CHECK(max_abs(p.z - 2.0 * s.sz) < 1e-15);
  }

  TEST_CASE("rotation operator examples") {
    CHECK(max_abs(rotation_operator({0.7, 0.3}, 0.0) - identity(3)) < 1e-14);
    const double theta = 0.9;
    const Operator r = rotation_operator({0.0, 1.0}, theta);
    CHECK(std::abs(r(0, 0) - std::exp(-kI * theta)) < 1e-14);
    CHECK(std::abs(r(1, 1) - 1.0) < 1e-14);
    CHECK(std::abs(r(2, 2) - std::exp(kI * theta)) < 1e-14);
    const Operator full = rotation_operator({kPi / 4.0, 1.0}, 2.0 * kPi);
    CHECK(max_abs(full - identity(3)) < 1e-12);
  }

  TEST_CASE("rotation operator is unitary and matches a direct exponential") {
    const SpinOperators s = spin1_operators();
    for (double alpha : {0.1, 1.0, 2.5}) {
      const double t = 3.7;
      const double omega = -0.4;
      const Operator gen = std::sin(alpha) * s.sx + std::cos(alpha) * s.sz;
      const Operator direct = expm(-kI * omega * t * gen);
      const Operator r = rotation_operator({alpha, omega}, t);
      CHECK(max_abs(r - direct) < 1e-13);
      CHECK(max_abs(r * r.adjoint() - identity(3)) < 1e-13);
    }
  }

  TEST_CASE("coherent spin states") {
    const SpinOperators s = spin1_operators();
    for (double theta : {0.0, 0.4, kPi / 2.0, kPi}) {
      for (double phi : {0.0, 1.3}) {
        const StateVector v = coherent_spin_state(theta, phi);
        CHECK(std::abs(v.norm() - 1.0) < 1e-14);
        StateVector up = StateVector::Zero(3);
        up(0) = 1.0;
        const StateVector ref = expm(-kI * phi * s.sz) * expm(-kI * theta * s.sy) * up;
        CHECK((v - ref).norm() < 1e-13);
        // <S> points along (theta, phi)
        CHECK(v.dot(s.sz * v).real() == doctest::Approx(std::cos(theta)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("Husimi Q is normalized over the sphere") {
    const Operator rho = test::random_density_matrix(3, 11);
    const int nt = 129, np = 128;
    double acc = 0.0;
    for (int i = 0; i < nt; ++i) {
      const double th = kPi * i / (nt - 1);
      const double wt = (i == 0 || i == nt - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      double ring = 0.0;
      for (int j = 0; j < np; ++j) ring += husimi_q(rho, th, 2.0 * kPi * j / np);
      acc += wt * std::sin(th) * ring * (2.0 * kPi / np);
    }
    acc *= kPi / (nt - 1) / 3.0;
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(husimi_q(2.0 * rho, 0.1, 0.2), InvalidDensityMatrix);
  }

  TEST_CASE("phase distribution integrates to zero and is flat for diagonal states") {
    const Operator rho = test::random_density_matrix(3, 5);
    const PhaseDistribution d = phase_distribution(rho, 64);
    double integral = 0.0;
    for (double v : d.values) integral += v * 2.0 * kPi / 64.0;
    CHECK(std::abs(integral) < 1e-8);
    Operator diag = Operator::Zero(3, 3);
    diag.diagonal() << 0.2, 0.3, 0.5;
    for (double v : phase_distribution(diag, 32).values) CHECK(std::abs(v) < 1e-9);
    const SyncMeasure flat = sync_measure_numeric(diag);
    CHECK(flat.phi_max == 0.0);
  }

  TEST_CASE("sync measure of a first-order state matches the closed form") {
    for (double delta : {0.0, 0.3}) {
      const auto ss = oracles::rwa_steady_state(0.5, 1.0, delta, 0.4);
      const double T = 0.05;
      const Operator rho = oracles::perturbative_steady_state(ss, T);
      const SyncMeasure m = sync_measure_numeric(rho);
      const double closed = oracles::sync_measure_closed_form(T, ss.coherences);
      CHECK(m.value == doctest::Approx(closed).epsilon(1e-8));
      const double phi_max = -std::arg(ss.coherences.c_plus1_0 + ss.coherences.c_0_minus1);
      CHECK(std::abs(wrap_angle(m.phi_max - phi_max)) < 1e-6);
    }
  }

  TEST_CASE("phase distribution of a coherence follows the cosine formula") {
    // S(phi) = 3/(8 sqrt2) Re[e^{i phi}(rho_{+1,0} + rho_{0,-1})] when rho_{+1,-1} = 0
    Operator rho = Operator::Zero(3, 3);
    rho.diagonal() << 0.3, 0.3, 0.4;
    rho(0, 1) = cd(0.05, 0.02);
    rho(1, 0) = std::conj(rho(0, 1));
    rho(1, 2) = cd(-0.01, 0.03);
    rho(2, 1) = std::conj(rho(1, 2));
    const PhaseDistribution d = phase_distribution(rho, 16);
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      const double ref = 3.0 / (8.0 * std::sqrt(2.0)) * (std::exp(kI * d.phi_grid[i]) * (rho(0, 1) + rho(1, 2))).real();
      CHECK(std::abs(d.values[i] - ref) < 1e-9);
    }
  }
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qgp/errors.hpp"
#include "qgp/linalg.hpp"
#include "qgp/quadrature.hpp"
#include "support.hpp"

using namespace qgp;

TEST_SUITE("linalg") {
  TEST_CASE("expm of a diagonal generator is the elementwise exponential") {
    Operator a = Operator::Zero(3, 3);
    a(0, 0) = cd(-0.3, 1.2);
    a(1, 1) = cd(0.5, 0.0);
    a(2, 2) = cd(-1.0, -2.0);
    const Operator e = expm(a);
    for (Index i = 0; i < 3; ++i) CHECK(std::abs(e(i, i) - std::exp(a(i, i))) < 1e-14);
    CHECK(std::abs(e(0, 1)) < 1e-15);
  }

  TEST_CASE("expm agrees across its Hermitian, anti-Hermitian and general branches") {
    const Operator h = test::random_hermitian(3, 7);
    const Operator u = expm(-kI * h);
    CHECK(max_abs(u * u.adjoint() - identity(3)) < 1e-13);
    // exp(A) exp(-A) = 1 for a general matrix
    Operator g = h + 0.3 * kI * test::random_hermitian(3, 8);
    CHECK(max_abs(expm(g) * expm(-g) - identity(3)) < 1e-12);
    // Hermitian branch against a Taylor series
    const Operator small = 0.05 * h;
    Operator taylor = identity(3), term = identity(3);
    for (int k = 1; k < 20; ++k) {
      term = term * small / static_cast<double>(k);
      taylor += term;
    }
    CHECK(max_abs(expm(small) - taylor) < 1e-14);
  }

  TEST_CASE("density matrix checks") {
    CHECK(is_density_matrix(test::random_density_matrix(3, 1)));
    Operator bad = identity(2);
    CHECK_FALSE(is_density_matrix(bad));
    CHECK_THROWS_AS(require_density_matrix(bad, "test"), InvalidDensityMatrix);
    Operator neg = Operator::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_FALSE(is_density_matrix(neg));
  }

  TEST_CASE("principal_arg and wrap_angle use (-pi, pi]") {
    CHECK(principal_arg(cd(-1.0, 0.0)) == doctest::Approx(std::numbers::pi));
    CHECK(principal_arg(cd(-1.0, -0.0)) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
    CHECK(wrap_angle(0.25) == doctest::Approx(0.25));
  }

  TEST_CASE("loglog_slope recovers a power law") {
    std::vector<double> x{10, 20, 40, 80}, y;
    for (double v : x) y.push_back(3.0 * std::pow(v, -4.0));
    CHECK(loglog_slope(x, y) == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), std::invalid_argument);
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("Simpson weights sum to the interval count") {
    for (std::size_t n = 1; n <= 15; ++n) {
      double sum = 0.0;
      for (double w : simpson_weights(n)) sum += w;
      CHECK(sum == doctest::Approx(static_cast<double>(n)).epsilon(1e-14));
    }
  }

  TEST_CASE("extended Simpson integrates cubics exactly for even and odd interval counts") {
    const auto cubic = [](double x) { return 2.0 - x + 0.5 * x * x - 0.25 * x * x * x; };
    const auto exact = [](double x) { return 2.0 * x - x * x / 2.0 + x * x * x / 6.0 - x * x * x * x / 16.0; };
    for (std::size_t n : {2u, 3u, 4u, 5u, 8u, 9u, 13u}) {
      const double h = 1.7 / static_cast<double>(n);
      double acc = 0.0;
      for (std::size_t j = 0; j <= n; ++j) acc += simpson_weight(j, n) * cubic(h * static_cast<double>(j));
      CHECK(acc * h == doctest::Approx(exact(1.7)).epsilon(1e-13));
    }
  }

  TEST_CASE("odd interval counts close with the 3/8 rule") {
    const auto w = simpson_weights(5);
    CHECK(w[0] == doctest::Approx(1.0 / 3.0));
    CHECK(w[1] == doctest::Approx(4.0 / 3.0));
    CHECK(w[2] == doctest::Approx(1.0 / 3.0 + 3.0 / 8.0));
    CHECK(w[3] == doctest::Approx(9.0 / 8.0));
    CHECK(w[4] == doctest::Approx(9.0 / 8.0));
    CHECK(w[5] == doctest::Approx(3.0 / 8.0));
  }

  TEST_CASE("streaming Simpson matches the weight table") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n = 1; n <= 24; ++n) {
      StreamingSimpson s;
      std::vector<cd> g(n + 1);
      cd ref = 0.0;
      for (std::size_t j = 0; j <= n; ++j) {
        g[j] = cd(u(gen), u(gen));
        s.push(g[j]);
        ref += simpson_weight(j, n) * g[j];
      }
      CHECK(std::abs(s.finish(0.1) - 0.1 * ref) < 1e-14);
    }
    StreamingSimpson one;
    one.push(1.0);
    CHECK_THROWS_AS(one.finish(1.0), std::invalid_argument);
  }
}

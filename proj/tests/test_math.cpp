#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dosefind/math.hpp"

using namespace dosefind;

TEST_CASE("logit and invlogit are inverse") {
  for (double p : {1e-8, 1e-3, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999, 1.0 - 1e-8}) {
    CHECK(num::invlogit(num::logit(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  for (double s : {-30.0, -4.0, -0.5, 0.0, 0.5, 4.0, 30.0}) {
    CHECK(num::logit(num::invlogit(s)) == doctest::Approx(s).epsilon(1e-10));
  }
}

TEST_CASE("invlogit is stable far into the tails") {
  CHECK(num::invlogit(-700.0) >= 0.0);
  CHECK(num::invlogit(-700.0) < 1e-300);
  CHECK(num::invlogit(700.0) == doctest::Approx(1.0));
  CHECK(std::isfinite(num::log_invlogit(-700.0)));
  CHECK(num::log_invlogit(-700.0) == doctest::Approx(-700.0));
  CHECK(num::log1m_invlogit(700.0) == doctest::Approx(-700.0));
}

TEST_CASE("log1pexp matches the naive form in the safe range") {
  for (double s = -30.0; s <= 30.0; s += 0.37) {
    CHECK(num::log1pexp(s) == doctest::Approx(std::log1p(std::exp(s))).epsilon(1e-13));
  }
  CHECK(num::log1pexp(800.0) == doctest::Approx(800.0));
  CHECK(num::log1pexp(-800.0) == doctest::Approx(0.0));
}

TEST_CASE("normal quantile hits reference values") {
  CHECK(num::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(num::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(num::normal_quantile(0.01) == doctest::Approx(-2.3263478740408408).epsilon(1e-12));
  // Symmetry.
  for (double p : {1e-10, 1e-4, 0.2, 0.45}) {
    CHECK(num::normal_quantile(p) == doctest::Approx(-num::normal_quantile(1.0 - p)).epsilon(1e-9));
  }
}

TEST_CASE("normal cdf and quantile round-trip") {
  for (double p : {1e-12, 1e-8, 1e-4, 0.01, 0.2, 0.5, 0.8, 0.99, 1.0 - 1e-8}) {
    const double z = num::normal_quantile(p);
    CHECK(num::normal_cdf(z) == doctest::Approx(p).epsilon(1e-9));
  }
  for (double z = -8.0; z <= 8.0; z += 0.61) {
    CHECK(num::normal_quantile(num::normal_cdf(z)) == doctest::Approx(z).epsilon(1e-9));
  }
  CHECK(num::normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(num::normal_cdf(-5.0) + num::normal_cdf(5.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gauss-hermite rule integrates monomials exactly") {
  const double sqrt_pi = std::sqrt(std::acos(-1.0));
  // integral of x^{2k} exp(-x^2) = sqrt(pi) (2k-1)!! / 2^k
  const double moments[6] = {sqrt_pi,           sqrt_pi / 2.0,        3.0 * sqrt_pi / 4.0,
                             15.0 * sqrt_pi / 8.0, 105.0 * sqrt_pi / 16.0, 945.0 * sqrt_pi / 32.0};
  for (int n : {5, 12, 40}) {
    const num::HermiteRule rule = num::gauss_hermite(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    REQUIRE(rule.weights.size() == static_cast<std::size_t>(n));
    const int exact_k = std::min(5, (2 * n - 1) / 2 / 2);
    for (int k = 0; k <= exact_k; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
      CHECK(acc == doctest::Approx(moments[k]).epsilon(1e-12));
    }
    // Odd moments vanish by symmetry.
    double odd = 0.0;
    for (int i = 0; i < n; ++i) odd += rule.weights[i] * std::pow(rule.nodes[i], 3);
    CHECK(odd == doctest::Approx(0.0).epsilon(0).scale(1e-13));
  }
}

TEST_CASE("gauss-hermite nodes are symmetric and ordered") {
  const num::HermiteRule rule = num::gauss_hermite(40);
  for (int i = 0; i < 40; ++i) {
    CHECK(rule.weights[i] > 0.0);
    CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[39 - i]).epsilon(1e-12));
    if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
  }
}

TEST_CASE("cholesky factors a known matrix") {
  const std::vector<double> l = num::cholesky({4.0, 2.0, 2.0, 3.0}, 2);
  CHECK(l[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(l[1] == doctest::Approx(0.0));
  CHECK(l[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l[3] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("cholesky reconstructs a random SPD matrix") {
  std::mt19937_64 gen(991);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int n = 4;
  std::vector<double> m(n * n);
  for (double& x : m) x = unif(gen);
  // a = m m^T + n I is SPD.
  std::vector<double> a(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) a[i * n + j] += m[i * n + k] * m[j * n + k];
    }
    a[i * n + i] += n;
  }
  const std::vector<double> l = num::cholesky(a, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k <= std::min(i, j); ++k) acc += l[i * n + k] * l[j * n + k];
      CHECK(acc == doctest::Approx(a[i * n + j]).epsilon(1e-12));
    }
  }
}

TEST_CASE("cholesky rejects non positive definite input") {
  CHECK_THROWS_AS(num::cholesky({1.0, 2.0, 2.0, 1.0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(num::cholesky({0.0, 0.0, 0.0, 0.0}, 2), std::invalid_argument);
}

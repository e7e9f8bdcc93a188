#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "patecon/errors.hpp"
#include "patecon/ols.hpp"

using namespace patecon;

TEST_CASE("ols recovers an exact linear relation") {
  std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> y = {2, 4, 6, 8, 10};
  auto fit = econ::ols(y, {std::vector<double>(5, 1.0), x});
  CHECK(fit.coefficients[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.coefficients[1] == doctest::Approx(2.0));
  CHECK(fit.ssr == doctest::Approx(0.0).epsilon(1e-18));
}

TEST_CASE("ols on a constant column returns the mean") {
  std::vector<double> y = {5, 5, 5, 5};
  auto fit = econ::ols(y, {std::vector<double>(4, 1.0)});
  CHECK(fit.coefficients[0] == doctest::Approx(5.0));
}

TEST_CASE("ols rejects rank-deficient designs") {
  std::vector<double> x = {1, 2, 3, 4, 5, 6};
  std::vector<double> twice = {2, 4, 6, 8, 10, 12};
  std::vector<double> y = {1, 1, 2, 2, 3, 3};
  try {
    econ::ols(y, {x, twice});
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
}

TEST_CASE("ols matches the normal-equations oracle on seeded systems") {
  std::mt19937 rng(1234);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 30;
    const std::size_t k = 1 + trial % 4;
    std::vector<std::vector<double>> cols(k, std::vector<double>(n));
    cols[0].assign(n, 1.0);
    for (std::size_t j = 1; j < k; ++j) {
      for (auto& v : cols[j]) v = noise(rng);
    }
    std::vector<double> beta_true(k);
    for (auto& b : beta_true) b = coef(rng);
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n; ++t) {
      double v = noise(rng);
      for (std::size_t j = 0; j < k; ++j) v += beta_true[j] * cols[j][t];
      y[t] = v;
    }
    auto fit = econ::ols(y, cols);
    auto oracle = oracles::normal_equations_ols(y, cols);
    for (std::size_t j = 0; j < k; ++j) {
      CHECK(fit.coefficients[j] ==
            doctest::Approx(oracle[j]).epsilon(1e-10));
    }
    // residual orthogonality, relative
    for (std::size_t j = 0; j < k; ++j) {
      double dot = 0, nx = 0, ne = 0;
      for (std::size_t t = 0; t < n; ++t) {
        dot += cols[j][t] * fit.residuals[t];
        nx += cols[j][t] * cols[j][t];
        ne += fit.residuals[t] * fit.residuals[t];
      }
      double denom = std::sqrt(nx) * std::sqrt(ne);
      if (denom > 0) CHECK(std::abs(dot) / denom < 1e-8);
    }
    // SSR identity
    double ssr = 0;
    for (double e : fit.residuals) ssr += e * e;
    CHECK(fit.ssr == doctest::Approx(ssr).epsilon(1e-12));
  }
}

TEST_CASE("information criteria follow their closed forms") {
  auto ic = econ::information_criteria(-100.0, 3, 50);
  CHECK(ic.aic == doctest::Approx(206.0));
  CHECK(ic.bic == doctest::Approx(200.0 + 3.0 * std::log(50.0)));
  CHECK(ic.hqc == doctest::Approx(200.0 + 6.0 * std::log(std::log(50.0))));

  auto zero_k = econ::information_criteria(-42.0, 0, 50);
  CHECK(zero_k.aic == doctest::Approx(84.0));
  CHECK(zero_k.bic == doctest::Approx(84.0));
  CHECK(zero_k.hqc == doctest::Approx(84.0));

  CHECK_THROWS_AS(econ::information_criteria(-1.0, 1, 1), Error);
}

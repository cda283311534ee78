#include <cmath>
#include <random>

#include "doctest.h"
#include "lpp/errors.hpp"
#include "lpp/stats.hpp"

using namespace lpp;

namespace {

// Closed form of the Wilson score interval, written out independently.
std::pair<double, double> wilson_reference(double k, double n, double z) {
  const double p = k / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return {centre - half, centre + half};
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("Wilson interval at 5 of 10") {
    const auto [lo, hi] = wilson(5, 10, 1.96);
    CHECK(lo == doctest::Approx(0.2366).epsilon(1e-3));
    CHECK(hi == doctest::Approx(0.7634).epsilon(1e-3));
  }

  TEST_CASE("Wilson interval matches the closed form") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
      const std::uint64_t n = 1 + rng() % 5000;
      const std::uint64_t k = rng() % (n + 1);
      const double z = 0.5 + static_cast<double>(rng() % 300) / 100.0;
      const auto [lo, hi] = wilson(k, n, z);
      const auto ref = wilson_reference(static_cast<double>(k), static_cast<double>(n), z);
      CHECK(lo == doctest::Approx(std::max(0.0, ref.first)).epsilon(1e-9));
      CHECK(hi == doctest::Approx(std::min(1.0, ref.second)).epsilon(1e-9));
      const double p = static_cast<double>(k) / static_cast<double>(n);
      CHECK(lo <= p);
      CHECK(p <= hi);
      CHECK(lo >= 0.0);
      CHECK(hi <= 1.0);
    }
  }

  TEST_CASE("Wilson interval endpoints at the extremes") {
    CHECK(wilson(0, 50).first == 0.0);
    CHECK(wilson(50, 50).second == 1.0);
    CHECK(wilson(0, 50).second > 0.0);
    CHECK_THROWS_AS(wilson(3, 2), InvalidParams);
    CHECK_THROWS_AS(wilson(0, 0), InvalidParams);
  }

  TEST_CASE("make_estimate fills every field") {
    const Estimate e = make_estimate(30, 120, 2.5);
    CHECK(e.hits == 30);
    CHECK(e.trials == 120);
    CHECK(e.p_hat == 0.25);
    CHECK(e.z == 2.5);
    CHECK(e.ci_lo < 0.25);
    CHECK(e.ci_hi > 0.25);
  }

  TEST_CASE("summary of a known sample") {
    const std::vector<double> xs{1, 2, 3, 4, 5};
    const StatSummary s = summarize(xs);
    CHECK(s.count == 5);
    CHECK(s.mean == 3.0);
    CHECK(s.variance == 2.5);
    CHECK(s.min == 1.0);
    CHECK(s.max == 5.0);
    CHECK(s.q50 == 3.0);
    CHECK(s.q25 == 2.0);
    CHECK(s.q05 == doctest::Approx(1.2));
    CHECK(s.q95 == doctest::Approx(4.8));
  }

  TEST_CASE("summary invariants on random samples") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g(0.0, 3.0);
    for (int i = 0; i < 200; ++i) {
      std::vector<double> xs(1 + rng() % 100);
      for (auto& x : xs) x = g(rng);
      const StatSummary s = summarize(xs);
      CHECK(s.min <= s.q05);
      CHECK(s.q05 <= s.q25);
      CHECK(s.q25 <= s.q50);
      CHECK(s.q50 <= s.q75);
      CHECK(s.q75 <= s.q95);
      CHECK(s.q95 <= s.max);
      CHECK(s.variance >= 0.0);
      CHECK(s.min <= s.mean);
      CHECK(s.mean <= s.max);
    }
    CHECK(summarize(std::vector<double>{4.0}).variance == 0.0);
    CHECK_THROWS_AS(summarize(std::vector<double>{}), InsufficientData);
  }

  TEST_CASE("exact stretched exponential recovers its exponent") {
    std::vector<std::pair<double, Estimate>> pts;
    for (double d : {0.2, 0.3, 0.5, 0.8}) {
      Estimate e;
      e.trials = 1000;
      e.p_hat = std::exp(-2.0 * std::pow(d, -1.5));
      pts.emplace_back(d, e);
    }
    const FitResult f = fit_exponent(pts, FitModel::StretchedExp);
    CHECK(f.slope == doctest::Approx(-1.5).epsilon(1e-9));
    CHECK(f.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(f.r_squared == doctest::Approx(1.0));
    CHECK(f.n_points == 4);
  }

  TEST_CASE("exact power law recovers its exponent") {
    std::vector<std::pair<double, Estimate>> pts;
    for (double d : {0.05, 0.1, 0.2, 0.4}) {
      Estimate e;
      e.p_hat = 0.7 * d;
      pts.emplace_back(d, e);
    }
    const FitResult f = fit_exponent(pts, FitModel::Power);
    CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("noisy stretched exponential stays near its exponent") {
    std::mt19937_64 rng(12);
    std::vector<std::pair<double, Estimate>> pts;
    for (double d : {0.35, 0.45, 0.6, 0.8, 1.0}) {
      const double p = std::exp(-0.5 * std::pow(d, -1.5));
      std::binomial_distribution<std::uint64_t> b(20000, p);
      pts.emplace_back(d, make_estimate(b(rng), 20000));
    }
    const FitResult f = fit_exponent(pts, FitModel::StretchedExp);
    CHECK(f.slope >= -1.7);
    CHECK(f.slope <= -1.3);
  }

  TEST_CASE("degenerate points are excluded") {
    std::vector<std::pair<double, Estimate>> pts;
    for (auto [d, p] : {std::pair{0.1, 0.0}, {0.2, 0.3}, {0.4, 0.6}, {1.0, 1.0}}) {
      Estimate e;
      e.p_hat = p;
      pts.emplace_back(d, e);
    }
    const FitResult f = fit_exponent(pts, FitModel::Power);
    CHECK(f.n_points == 2);
    CHECK(f.excluded == std::vector<double>{0.1, 1.0});
    pts.erase(pts.begin() + 1);
    CHECK_THROWS_AS(fit_exponent(pts, FitModel::Power), InsufficientData);
  }

  TEST_CASE("least squares on a line") {
    const std::vector<double> x{0, 1, 2, 3};
    const std::vector<double> y{1, 3, 5, 7};
    const LinearFit f = ordinary_least_squares(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r_squared == doctest::Approx(1.0));
    const std::vector<double> flat{2, 2};
    const std::vector<double> any{1, 3};
    CHECK_THROWS_AS(ordinary_least_squares(flat, any), InsufficientData);
  }

  TEST_CASE("model names round-trip") {
    CHECK(std::string(to_string(FitModel::StretchedExp)) == "STRETCHED_EXP");
    CHECK(fit_model_from_string("POWER") == FitModel::Power);
    CHECK_THROWS(fit_model_from_string("LINEAR"));
  }
}

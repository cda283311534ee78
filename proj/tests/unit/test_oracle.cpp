#include <random>

#include "doctest.h"
#include "lpp/errors.hpp"
#include "lpp/oracle.hpp"

using namespace lpp;
using oracle::brute_argmax_unique;
using oracle::brute_max;
using oracle::path_count;

TEST_SUITE("oracle") {
  TEST_CASE("path counts are binomials") {
    CHECK(path_count({0, 0}, {0, 0}) == 1);
    CHECK(path_count({0, 0}, {1, 1}) == 2);
    CHECK(path_count({0, 0}, {3, 3}) == 20);
    CHECK(path_count({-2, 5}, {3, 5}) == 1);
    CHECK(path_count({0, 0}, {6, 6}) == 924);
    CHECK(path_count({0, 0}, {30, 30}) == 118264581564861424ULL);
    CHECK(path_count({0, 0}, {100, 100}) == UINT64_MAX);
  }

  TEST_CASE("degenerate windows") {
    const FieldSpec f{1};
    CHECK(brute_max(f, {2, 2}, {2, 2}, PassageConvention::ExcludeBoth).value == 0.0);
    CHECK(brute_max(f, {2, 2}, {2, 2}, PassageConvention::IncludeBoth).value == 2 * f(2, 2));
    CHECK_THROWS_AS(brute_max(f, {0, 0}, {2, 2}, PassageConvention::ExcludeBoth, StripSpec{0, 0, 0, 4}),
                    NoPath);
    CHECK_THROWS_AS(brute_max(f, {1, 0}, {0, 3}, PassageConvention::ExcludeBoth), InvalidParams);
  }

  TEST_CASE("budget is enforced") {
    const FieldSpec f{1};
    CHECK_THROWS_AS(brute_max(f, {0, 0}, {10, 10}, PassageConvention::ExcludeBoth), BudgetExceeded);
    CHECK_NOTHROW(brute_max(f, {0, 0}, {10, 10}, PassageConvention::ExcludeBoth, std::nullopt,
                            oracle::PathBudget{200000}));
  }

  TEST_CASE("argmax is unique for continuous weights") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
      const FieldSpec f{rng()};
      const LatticePoint v{static_cast<std::int64_t>(rng() % 6), static_cast<std::int64_t>(rng() % 6)};
      CHECK(brute_argmax_unique(f, {0, 0}, v));
    }
  }

  TEST_CASE("forced ties are detected") {
    const WeightFn flat = [](LatticePoint) { return 2.0; };
    CHECK_FALSE(brute_argmax_unique(flat, {0, 0}, {2, 2}));
    CHECK(brute_argmax_unique(flat, {0, 0}, {0, 4}));
    CHECK(brute_argmax_unique(flat, {0, 0}, {0, 0}));
  }

  TEST_CASE("brute force value is the sum along its own path") {
    const FieldSpec f{11};
    const auto r = brute_max(f, {0, 0}, {4, 3}, PassageConvention::IncludeBoth);
    double s = 0.0;
    for (const auto& p : r.path.vertices) s += f(p);
    CHECK(r.value == doctest::Approx(s).epsilon(1e-12));
    CHECK(r.path.vertices.size() == 8);
  }

  TEST_CASE("DP and enumeration agree on 200 random cases") {
    const auto rep = oracle::check_agreement(200, 0);
    CHECK(rep.cases == 200);
    CHECK(rep.ok());
    CHECK(rep.max_rel_error < 1e-9);
  }
}

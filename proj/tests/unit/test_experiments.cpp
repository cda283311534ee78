#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "lpp/errors.hpp"
#include "lpp/experiments.hpp"

using namespace lpp;

namespace {

const FieldSpec kBase{20240101};

RunOptions with_workers(unsigned w) {
  RunOptions o;
  o.workers = w;
  return o;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("map_replicas keeps results in index order") {
    const auto out = map_replicas(100, 4, [](std::uint64_t r) { return r * r; });
    REQUIRE(out.size() == 100);
    for (std::uint64_t r = 0; r < 100; ++r) CHECK(out[r] == r * r);
  }

  TEST_CASE("map_replicas rethrows a replica failure") {
    auto boom = [](std::uint64_t r) -> int {
      if (r == 37) throw NoPath("replica 37");
      return 0;
    };
    CHECK_THROWS_AS(map_replicas(100, 3, boom), NoPath);
    CHECK_THROWS_AS(map_replicas(100, 1, boom), NoPath);
  }

  TEST_CASE("small ball: a huge delta always holds, a zero-width ball never does") {
    const double deltas[] = {1e-6, 100.0};
    const auto sweep = run_small_ball(kBase, 50, deltas, 40);
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[0].second.hits == 0);
    CHECK(sweep[1].second.hits == 40);
    CHECK(sweep[1].second.p_hat == 1.0);
  }

  TEST_CASE("small ball is monotone in delta") {
    const double deltas[] = {0.2, 0.4, 0.6, 0.9, 1.5};
    const auto sweep = run_small_ball(kBase, 80, deltas, 200);
    for (std::size_t i = 1; i < sweep.size(); ++i) CHECK(sweep[i].second.hits >= sweep[i - 1].second.hits);
  }

  TEST_CASE("small ball and transversal tail are complementary") {
    const double xs[] = {0.3, 0.7, 1.1};
    const auto ball = run_small_ball(kBase, 64, xs, 150);
    const auto tail = run_transversal_tail(kBase, 64, xs, 150);
    for (std::size_t i = 0; i < 3; ++i) CHECK(ball[i].second.hits + tail[i].second.hits == 150);
  }

  TEST_CASE("transversal tail at x = 0 and beyond n^{1/3}") {
    const std::int64_t n = 64;  // n^{1/3} = 4
    const double xs[] = {0.0, 4.0, 7.5};
    const auto tail = run_transversal_tail(kBase, n, xs, 50);
    CHECK(tail[0].second.p_hat == 1.0);
    CHECK(tail[1].second.p_hat == 0.0);
    CHECK(tail[2].second.p_hat == 0.0);
  }

  TEST_CASE("one point: t = 0 always hits, odd t misses a sub-unit window") {
    const double deltas[] = {0.01, 1.0};
    CHECK(run_one_point(kBase, 100, 0, deltas, 30)[0].second.p_hat == 1.0);
    // 0.04 * 100^{2/3} < 1 while an odd time forces |psi| >= 1.
    const double tiny[] = {0.04};
    CHECK(run_one_point(kBase, 100, 51, tiny, 30)[0].second.hits == 0);
    CHECK_THROWS_AS(run_one_point(kBase, 100, 201, tiny, 3), InvalidParams);
  }

  TEST_CASE("one point interval") {
    CHECK(run_one_point_interval(kBase, 60, 0, -2, 2, 20).p_hat == 1.0);
    CHECK(run_one_point_interval(kBase, 60, 0, 2, 6, 20).p_hat == 0.0);
    CHECK(run_one_point_interval(kBase, 60, 60, -200, 200, 20).p_hat == 1.0);
    CHECK_THROWS_AS(run_one_point_interval(kBase, 60, 30, 0, 1, 5), InvalidParams);
  }

  TEST_CASE("constrained tail at infinite c always holds") {
    CHECK(run_constrained_tail(kBase, 100, 0.5, INFINITY, 20).p_hat == 1.0);
    CHECK_THROWS_AS(run_constrained_tail(kBase, 100, 0.5, -1.0, 20), InvalidParams);
    CHECK_THROWS_AS(run_constrained_tail(kBase, 1000, 0.004, 1.0, 2), InvalidParams);
  }

  TEST_CASE("constrained tail is monotone in c") {
    const double a = run_constrained_tail(kBase, 100, 0.5, 2.0, 100).p_hat;
    const double b = run_constrained_tail(kBase, 100, 0.5, 6.0, 100).p_hat;
    CHECK(a <= b);
  }

  TEST_CASE("gamma target requires an integer") {
    CHECK(gamma_target(100, 0.25) == 25);
    CHECK(gamma_target(10, 1.0) == 10);
    CHECK_THROWS_AS(gamma_target(10, 0.33), InvalidParams);
  }

  TEST_CASE("TW statistic centring and scale") {
    const std::int64_t n = 1000;
    CHECK(tw_statistic(4.0 * n, n, 1.0) == doctest::Approx(0.0));
    const double unit = std::pow(2.0, -4.0 / 3.0) / std::cbrt(1000.0);
    CHECK(tw_statistic(4.0 * n + 1.0, n, 1.0) == doctest::Approx(unit));
    // gamma = 1/4: centre (3/2)^2 n, prefactor (1/4)^{1/6} (3/2)^{-4/3}.
    const double pref = std::pow(0.25, 1.0 / 6.0) * std::pow(1.5, -4.0 / 3.0) / std::cbrt(1000.0);
    CHECK(tw_statistic(2.25 * n + 3.0, n, 0.25) == doctest::Approx(3.0 * pref));
  }

  TEST_CASE("limit shape ratio is positive and sensible") {
    const std::int64_t ns[] = {50, 100};
    const auto out = run_limit_shape(kBase, ns, 1.0, 30);
    REQUIRE(out.size() == 2);
    for (const auto& [n, s] : out) {
      CHECK(s.count == 30);
      CHECK(s.mean > 3.0);
      CHECK(s.mean < 4.2);
    }
  }

  TEST_CASE("block z centring and scale") {
    CHECK(block_z(4.0 * 2.0 * std::pow(0.25, 1.5) * 1000.0, 1000, 0.25, 2.0) == doctest::Approx(0.0));
    const double scale = std::cbrt(2.0) * 0.5 * 10.0;
    CHECK(block_z(4.0 * 2.0 * 0.125 * 1000.0 + scale, 1000, 0.25, 2.0) == doctest::Approx(1.0));
  }

  TEST_CASE("block stats pool every block and check the bound") {
    const BlockStats s = run_block_stats(kBase, 128, 0.5, 1.0, 12);
    CHECK(s.blocks_per_replica == 2);
    CHECK(s.z_samples.size() == 24);
    CHECK(s.bound_checks == 12);
    CHECK(s.a_effective == doctest::Approx(std::pow(0.5, -1.5) / 2.0));
  }

  TEST_CASE("survival counts") {
    const std::vector<double> z{-1.0, 0.0, 0.5, 2.0};
    const std::vector<double> rs{-5.0, 0.0, 1.0, 3.0};
    CHECK(survival(z, rs) == std::vector<double>{1.0, 0.75, 0.25, 0.0});
  }

  TEST_CASE("coalescence geometry") {
    const auto g = coalescence_geometry(1000, 1.0);
    CHECK(g.a1 == LatticePoint{-100, 100});
    CHECK(g.a2 == LatticePoint{100, -100});
    CHECK(g.b1 == LatticePoint{900, 1100});
    CHECK(g.psi_cap == 200);
  }

  TEST_CASE("coalescence trivial cases") {
    // M = 0: both geodesics are the same one, and at t = 0 it sits at the origin.
    CHECK(run_coalescence(kBase, 80, 0, 0.0, 20).p_hat == 1.0);
    // Distinct starting points cannot coincide at t = 0.
    CHECK(run_coalescence(kBase, 80, 0, 1.0, 20).p_hat == 0.0);
  }

  TEST_CASE("crossing count with one index is 0 or 1") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto c = crossing_count(FieldSpec{s}, 100, 100, 0.2, 0, 0);
      CHECK(c.count <= 1);
      CHECK(c.dps == 1);
    }
    CHECK(crossing_count(kBase, 100, 0, 0.2, -2, 2).count == 5);
  }

  TEST_CASE("pruned crossing count equals the direct count") {
    const std::int64_t n = 120, t = 120;
    const double delta = 0.1;
    const std::int64_t step = scaled_width(n, delta);
    const double radius = scaled_length(n, delta);
    for (std::uint64_t s = 0; s < 15; ++s) {
      const FieldSpec f{s + 500};
      std::uint64_t direct = 0;
      for (std::int64_t i = -5; i <= 5; ++i) {
        const LatticePoint u{i * step, -i * step};
        const LatticePoint v = u + LatticePoint{n, n};
        const std::int64_t psi = one_point(profile(build_table(f, u, v), v), t);
        if (std::abs(static_cast<double>(psi - 2 * i * step)) < radius) ++direct;
      }
      const auto c = crossing_count(f, n, t, delta, -5, 5);
      CHECK(c.count == direct);
      CHECK(c.dps <= 11);
    }
    CHECK(crossing_index_bound(0.1) == 5);
    CHECK(crossing_index_bound(0.2) == 2);
    CHECK_THROWS_AS(run_crossing_count(kBase, n, t, 0.2, -3, 0, 2), InvalidParams);
  }

  TEST_CASE("results do not depend on the worker count") {
    const double deltas[] = {0.3, 0.6, 1.0};
    const auto one = run_small_ball(kBase, 60, deltas, 64, with_workers(1));
    const auto four = run_small_ball(kBase, 60, deltas, 64, with_workers(4));
    for (std::size_t i = 0; i < 3; ++i) CHECK(one[i].second.hits == four[i].second.hits);
    const auto b1 = run_block_stats(kBase, 64, 0.5, 1.0, 10, with_workers(1));
    const auto b3 = run_block_stats(kBase, 64, 0.5, 1.0, 10, with_workers(3));
    CHECK(b1.z_samples == b3.z_samples);
  }

  TEST_CASE("replica fields differ") {
    CHECK(replica_field(kBase, 0).seed != replica_field(kBase, 1).seed);
    CHECK(replica_field(kBase, 3).seed == replica_field(kBase, 3).seed);
  }
}

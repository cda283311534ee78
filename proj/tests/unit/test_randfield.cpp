#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lpp/randfield.hpp"

using namespace lpp;

namespace {

struct SiteGolden {
  std::uint64_t seed;
  std::int64_t x, y;
  std::uint64_t z;
  double weight;
};

// Produced by an independent Python implementation of the mixing contract.
const SiteGolden kSiteGolden[] = {
    {0x0ULL, 0, 0, 0x0ULL, 36.7368005696771},
    {0x0ULL, 1, 0, 0xe220a8397b1dcdafULL, 0.12407814913061165},
    {0x0ULL, 0, 1, 0x68850ac74e2e5a26ULL, 0.8958019150692577},
    {0x2aULL, 3, -7, 0x5c80a6e3bf56f932ULL, 1.017941270245118},
    {0xdeadbeefcafebabeULL, -100000, 123456, 0xb252f5529a4f3069ULL, 0.3615750110058877},
    {0xffffffffffffffffULL, -1, -1, 0x44542f6b41109923ULL, 1.3208453870518644},
};

struct ReplicaGolden {
  std::uint64_t base, index, seed;
};

const ReplicaGolden kReplicaGolden[] = {
    {0x0ULL, 0x0ULL, 0x0ULL},
    {0x0ULL, 0x1ULL, 0xe220a8397b1dcdafULL},
    {0x3039ULL, 0x7ULL, 0x1f6622b40cb38e42ULL},
    {0xffffffffffffffffULL, 0xffffffffffffffffULL, 0xde0a564cbcd060c4ULL},
};

}  // namespace

TEST_SUITE("randfield") {
  TEST_CASE("bit-exact site hash and weight") {
    for (const auto& g : kSiteGolden) {
      CAPTURE(g.seed);
      CHECK(site_hash(g.seed, g.x, g.y) == g.z);
      CHECK(FieldSpec{g.seed}(g.x, g.y) == g.weight);
    }
  }

  TEST_CASE("bit-exact replica seeds") {
    for (const auto& g : kReplicaGolden) CHECK(replica_seed(g.base, g.index) == g.seed);
  }

  TEST_CASE("weights are deterministic and positive") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
      const FieldSpec f{rng()};
      const LatticePoint p{static_cast<std::int64_t>(rng()), static_cast<std::int64_t>(rng())};
      CHECK(weight(f, p) == weight(f, p));
    }
    const FieldSpec f{12345};
    std::size_t non_positive = 0;
    for (std::int64_t i = 0; i < 1'000'000; ++i) {
      const double w = f(i % 1000 - 500, i / 1000 - 500);
      if (!(w > 0.0) || !std::isfinite(w)) ++non_positive;
    }
    CHECK(non_positive == 0);
  }

  TEST_CASE("sample mean at seed 0 is 1") {
    const FieldSpec f{0};
    double sum = 0.0;
    for (std::int64_t x = 0; x < 1000; ++x) {
      for (std::int64_t y = 0; y < 1000; ++y) sum += f(x, y);
    }
    CHECK(sum / 1e6 == doctest::Approx(1.0).epsilon(0.005));
  }

  TEST_CASE("chi-square goodness of fit against Exp(1), 20 bins") {
    const FieldSpec f{2024};
    std::vector<double> edges;
    for (int k = 1; k < 20; ++k) edges.push_back(-std::log(1.0 - k / 20.0));
    std::vector<std::size_t> counts(20, 0);
    for (std::int64_t x = -500; x < 500; ++x) {
      for (std::int64_t y = -500; y < 500; ++y) {
        const double w = f(x, y);
        const auto bin = std::upper_bound(edges.begin(), edges.end(), w) - edges.begin();
        ++counts[static_cast<std::size_t>(bin)];
      }
    }
    const double expected = 1e6 / 20.0;
    double chi2 = 0.0;
    for (auto c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 0.9999 quantile of chi-square with 19 degrees of freedom (scipy.stats.chi2.ppf).
    CHECK(chi2 < 50.79548966562221);
  }

  TEST_CASE("replica seeds separate streams") {
    const std::uint64_t s = 0xABCDEF;
    CHECK(replica_seed(s, 0) != replica_seed(s, 1));
    CHECK(replica_seed(s, 5) == replica_seed(s, 5));
    std::size_t ones = 0;
    for (std::uint64_t i = 0; i <= 100000; ++i) ones += replica_seed(s, i) & 1U;
    CHECK(static_cast<double>(ones) / 100001.0 == doctest::Approx(0.5).epsilon(0.02));
  }
}

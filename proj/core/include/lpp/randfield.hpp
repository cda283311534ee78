#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "lpp/lattice.hpp"

namespace lpp {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kCoordMixY = 0xC2B2AE3D27D4EB4FULL;

constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// 64-bit mixed key for a lattice site. Part of the reproducibility contract:
// any other implementation must produce the same value for every seed and site.
constexpr std::uint64_t site_hash(std::uint64_t seed, std::int64_t x, std::int64_t y) {
  const auto ux = static_cast<std::uint64_t>(x);
  const auto uy = static_cast<std::uint64_t>(y);
  return splitmix64_finalize(seed ^ (ux * kGoldenGamma) ^ (uy * kCoordMixY));
}

// Top 53 bits of z mapped into (0, 1].
constexpr double unit_open_closed(std::uint64_t z) {
  return static_cast<double>((z >> 11) + 1) * 0x1.0p-53;
}

// Seed of an i.i.d. Exp(1) field over all of Z^2. The weight at a site is a pure
// function of (seed, x, y), so fields are evaluated lazily and never stored.
struct FieldSpec {
  std::uint64_t seed = 0;

  double operator()(std::int64_t x, std::int64_t y) const {
    return -std::log(unit_open_closed(site_hash(seed, x, y)));
  }
  double operator()(LatticePoint p) const { return (*this)(p.x, p.y); }
};

inline double weight(const FieldSpec& spec, LatticePoint p) { return spec(p); }

// Independent stream for replica `replica_index` of an experiment.
constexpr std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t replica_index) {
  return splitmix64_finalize(base_seed + replica_index * kGoldenGamma);
}

using WeightFn = std::function<double(LatticePoint)>;

// Arbitrary weight assignment. Used for test-only injection (ties, hand-built
// configurations); production code goes through FieldSpec.
struct FunctionWeights {
  WeightFn fn;

  double operator()(std::int64_t x, std::int64_t y) const { return fn(LatticePoint{x, y}); }
  double operator()(LatticePoint p) const { return fn(p); }
};

}  // namespace lpp

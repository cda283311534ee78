#pragma once

#include <cstdint>
#include <optional>

#include "lpp/geodesic.hpp"
#include "lpp/lattice.hpp"
#include "lpp/passage.hpp"
#include "lpp/randfield.hpp"

// Exhaustive path enumeration on small windows. Ground truth for the DP: it
// deliberately shares no code with passage.cpp beyond the lattice types.
namespace lpp::oracle {

struct PathBudget {
  std::uint64_t max_paths = 100000;
};

// binomial(dx + dy, dx), saturating at UINT64_MAX. Requires leq(u, v).
std::uint64_t path_count(LatticePoint u, LatticePoint v);

struct BruteResult {
  double value = 0.0;
  Geodesic path;
};

// Best path from u to v under `conv`, interior vertices restricted to region.
// Among exactly tied paths the first in up-before-right order is returned.
// Throws BudgetExceeded, NoPath, InvalidParams (u not <= v).
BruteResult brute_max(const WeightFn& weights, LatticePoint u, LatticePoint v,
                      PassageConvention conv, const std::optional<StripSpec>& region = std::nullopt,
                      PathBudget budget = {});
BruteResult brute_max(const FieldSpec& field, LatticePoint u, LatticePoint v,
                      PassageConvention conv, const std::optional<StripSpec>& region = std::nullopt,
                      PathBudget budget = {});

// True iff exactly one path attains the maximum (exact float comparison).
bool brute_argmax_unique(const WeightFn& weights, LatticePoint u, LatticePoint v,
                         PathBudget budget = {});
bool brute_argmax_unique(const FieldSpec& field, LatticePoint u, LatticePoint v,
                         PathBudget budget = {});

// max over sources x targets of brute_max values.
double brute_sup(const WeightFn& weights, std::span<const LatticePoint> sources,
                 std::span<const LatticePoint> targets, PassageConvention conv,
                 const std::optional<StripSpec>& region = std::nullopt, PathBudget budget = {});

// Randomised DP-vs-enumeration comparison used by `oracle-check` and the
// acceptance suite: windows up to 7x7, random endpoints, random strip masks,
// all three conventions, value and path identity.
struct AgreementReport {
  std::uint64_t cases = 0;
  std::uint64_t value_mismatches = 0;
  std::uint64_t path_mismatches = 0;
  std::uint64_t nopath_mismatches = 0;
  std::uint64_t no_path_cases = 0;
  double max_rel_error = 0.0;

  bool ok() const { return value_mismatches == 0 && path_mismatches == 0 && nopath_mismatches == 0; }
};

AgreementReport check_agreement(std::uint64_t cases, std::uint64_t seed, double rel_tol = 1e-9);

}  // namespace lpp::oracle

#include "lpp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "lpp/errors.hpp"

namespace lpp::oracle {

namespace {

// Depth-first enumeration of every up-right path u -> v whose interior lies
// in region. on_path(vertices, interior_sum) is called once per complete path.
template <class OnPath>
void enumerate_paths(const WeightFn& weights, LatticePoint u, LatticePoint v,
                     const std::optional<StripSpec>& region, OnPath&& on_path) {
  struct Frame {
    LatticePoint at;
    double sum;      // interior weights strictly after u up to and including `at` (if interior)
    int next_dir;    // 0: try up, 1: try right, 2: exhausted
  };
  std::vector<Frame> stack;
  std::vector<LatticePoint> path;
  stack.push_back({u, 0.0, 0});
  path.push_back(u);
  if (u == v) {
    on_path(path, 0.0);
    return;
  }
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_dir == 2) {
      stack.pop_back();
      path.pop_back();
      continue;
    }
    const int dir = f.next_dir++;
    const LatticePoint next = dir == 0 ? LatticePoint{f.at.x, f.at.y + 1}
                                       : LatticePoint{f.at.x + 1, f.at.y};
    if (next.x > v.x || next.y > v.y) continue;
    if (next == v) {
      path.push_back(next);
      on_path(path, f.sum);
      path.pop_back();
      continue;
    }
    if (region && !region->contains(next)) continue;
    const double sum = f.sum + weights(next);
    stack.push_back({next, sum, 0});
    path.push_back(next);
  }
}

double apply_convention(double interior, double wu, double wv, PassageConvention conv) {
  switch (conv) {
    case PassageConvention::ExcludeBoth:
      return interior;
    case PassageConvention::ExcludeLast:
      return interior + wu;
    case PassageConvention::IncludeBoth:
      return interior + wu + wv;
  }
  return interior;
}

void check_budget(LatticePoint u, LatticePoint v, PathBudget budget) {
  if (!leq(u, v)) throw InvalidParams("oracle: u must be <= v");
  if (path_count(u, v) > budget.max_paths) throw BudgetExceeded("oracle: too many paths");
}

WeightFn wrap(const FieldSpec& field) {
  return [field](LatticePoint p) { return field(p); };
}

}  // namespace

std::uint64_t path_count(LatticePoint u, LatticePoint v) {
  if (!leq(u, v)) throw InvalidParams("path_count: u must be <= v");
  const auto dx = static_cast<std::uint64_t>(v.x - u.x);
  const auto dy = static_cast<std::uint64_t>(v.y - u.y);
  const std::uint64_t k = std::min(dx, dy);
  const std::uint64_t n = dx + dy;
  __extension__ unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(c);
}

BruteResult brute_max(const WeightFn& weights, LatticePoint u, LatticePoint v,
                      PassageConvention conv, const std::optional<StripSpec>& region,
                      PathBudget budget) {
  check_budget(u, v, budget);
  const double wu = weights(u);
  const double wv = weights(v);
  bool found = false;
  BruteResult best;
  enumerate_paths(weights, u, v, region, [&](const std::vector<LatticePoint>& path, double sum) {
    const double value = u == v ? apply_convention(0.0, wu, wv, conv) : apply_convention(sum, wu, wv, conv);
    if (!found || value > best.value) {
      found = true;
      best.value = value;
      best.path.vertices = path;
    }
  });
  if (!found) throw NoPath("brute_max: no admissible path");
  return best;
}

BruteResult brute_max(const FieldSpec& field, LatticePoint u, LatticePoint v,
                      PassageConvention conv, const std::optional<StripSpec>& region,
                      PathBudget budget) {
  return brute_max(wrap(field), u, v, conv, region, budget);
}

bool brute_argmax_unique(const WeightFn& weights, LatticePoint u, LatticePoint v,
                         PathBudget budget) {
  check_budget(u, v, budget);
  double best = -std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;
  enumerate_paths(weights, u, v, std::nullopt, [&](const std::vector<LatticePoint>&, double sum) {
    if (sum > best) {
      best = sum;
      count = 1;
    } else if (sum == best) {
      ++count;
    }
  });
  return count == 1;
}

bool brute_argmax_unique(const FieldSpec& field, LatticePoint u, LatticePoint v,
                         PathBudget budget) {
  return brute_argmax_unique(wrap(field), u, v, budget);
}

double brute_sup(const WeightFn& weights, std::span<const LatticePoint> sources,
                 std::span<const LatticePoint> targets, PassageConvention conv,
                 const std::optional<StripSpec>& region, PathBudget budget) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& u : sources) {
    for (const auto& v : targets) {
      if (!leq(u, v)) continue;
      try {
        best = std::max(best, brute_max(weights, u, v, conv, region, budget).value);
      } catch (const NoPath&) {
      }
    }
  }
  if (best == -std::numeric_limits<double>::infinity()) throw NoPath("brute_sup: no pair connects");
  return best;
}

AgreementReport check_agreement(std::uint64_t cases, std::uint64_t seed, double rel_tol) {
  AgreementReport rep;
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  constexpr PassageConvention kConventions[] = {PassageConvention::ExcludeBoth,
                                                PassageConvention::ExcludeLast,
                                                PassageConvention::IncludeBoth};
  for (std::uint64_t c = 0; c < cases; ++c) {
    const FieldSpec field{rng()};
    const LatticePoint u{uniform(-3, 3), uniform(-3, 3)};
    const LatticePoint v{u.x + uniform(0, 6), u.y + uniform(0, 6)};
    std::optional<StripSpec> region;
    if (uniform(0, 3) != 0) {
      const DiagCoord du = to_diag(u);
      const DiagCoord dv = to_diag(v);
      const std::int64_t a = uniform(std::min(du.psi, dv.psi) - 3, std::max(du.psi, dv.psi) + 1);
      const std::int64_t b = uniform(a, a + 6);
      const std::int64_t p0 = uniform(du.phi - 1, du.phi + 1);
      const std::int64_t p1 = uniform(dv.phi - 1, dv.phi + 1);
      region = StripSpec{a, b, std::min(p0, p1), std::max(p0, p1)};
    }
    const PassageConvention conv = kConventions[c % 3];
    ++rep.cases;

    std::optional<BruteResult> truth;
    try {
      truth = brute_max(field, u, v, conv, region);
    } catch (const NoPath&) {
    }
    std::optional<DpTable> table;
    try {
      table = build_table(field, u, v, region);
    } catch (const NoPath&) {
    }
    if (truth.has_value() != table.has_value()) {
      ++rep.nopath_mismatches;
      continue;
    }
    if (!truth) {
      ++rep.no_path_cases;
      continue;
    }
    const double dp = passage_time(*table, v, conv);
    const double err = std::abs(dp - truth->value) / std::max(1.0, std::abs(truth->value));
    rep.max_rel_error = std::max(rep.max_rel_error, err);
    if (err > rel_tol) ++rep.value_mismatches;
    if (backtrack(*table, v).vertices != truth->path.vertices) ++rep.path_mismatches;
  }
  return rep;
}

}  // namespace lpp::oracle

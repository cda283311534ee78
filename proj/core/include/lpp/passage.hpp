#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "lpp/lattice.hpp"
#include "lpp/randfield.hpp"

namespace lpp {

// Which endpoint weights a passage time counts.
//   ExcludeBoth: interior vertices only (the standard definition here).
//   ExcludeLast: source weight plus interior.
//   IncludeBoth: every vertex of the path.
enum class PassageConvention { ExcludeBoth, ExcludeLast, IncludeBoth };

const char* to_string(PassageConvention c);

template <class W>
concept WeightSource = requires(const W& w, std::int64_t x, std::int64_t y) {
  { w(x, y) } -> std::convertible_to<double>;
};

inline constexpr double kUnreachable = -std::numeric_limits<double>::infinity();

// Max-plus DP over a lattice window, swept one anti-diagonal at a time.
//
// Each stored cell w holds acc(w): the best sum over up-right paths from a
// source to w whose vertices strictly between the source and w all lie in the
// region (sources are exempt). A cell outside the region still gets a value
// when a neighbouring in-region cell feeds it, so paths may end on the
// region's boundary, but such cells never feed their successors.
//
// Single-source tables start at acc(source) = 0, so acc(w) excludes the
// source weight. Multi-source tables start every source at either 0 or its
// weight; see source_weight_included().
//
// One predecessor bit per cell: 1 = came from (x-1, y), 0 = came from (x, y-1).
// Exact ties pick (x-1, y), giving the leftmost geodesic.
class DpTable {
 public:
  struct Diagonal {
    std::int64_t x_lo = 0;   // stored cells: x in [x_lo, x_hi]
    std::int64_t x_hi = -1;
    std::int64_t allow_lo = 0;  // cells that feed the next diagonal
    std::int64_t allow_hi = -1;
    std::size_t offset = 0;
  };

  const std::vector<LatticePoint>& sources() const { return sources_; }
  bool multi_source() const { return multi_; }
  bool source_weight_included() const { return source_weight_included_; }
  const std::optional<StripSpec>& region() const { return region_; }

  std::int64_t phi_begin() const { return phi0_; }
  std::int64_t phi_end() const { return phi0_ + static_cast<std::int64_t>(diagonals_.size()) - 1; }
  std::size_t cell_count() const { return acc_.size(); }

  bool stored(LatticePoint w) const;
  bool reachable(LatticePoint w) const { return stored(w) && accumulated(w) != kUnreachable; }
  // Whether w may be an interior vertex of a path (in the region, or a source).
  bool feeds_successors(LatticePoint w) const;

  // acc(w) as described above; kUnreachable when not stored or unreachable.
  double accumulated(LatticePoint w) const;
  // Sum over the whole optimal path including both endpoints. Requires a
  // single-source table or one whose sources start at their own weight.
  double raw_value(LatticePoint w) const;
  bool came_from_left(LatticePoint w) const;
  // acc of w's chosen predecessor, i.e. acc(w) without w's own weight, taken
  // directly rather than by subtraction. Sources return their starting value.
  double arrival(LatticePoint w) const;

  double weight_at(LatticePoint w) const { return weight_(w); }

  // Cells where both predecessors fed equal finite values.
  std::uint64_t tie_count() const { return ties_; }

  const std::vector<Diagonal>& diagonals() const { return diagonals_; }

  template <WeightSource W>
  friend DpTable build_dp(const W& weights, std::span<const LatticePoint> sources,
                          bool sources_start_at_weight, LatticePoint window_lo,
                          LatticePoint window_hi, const std::optional<StripSpec>& region);

 private:
  std::size_t index_of(LatticePoint w) const;

  std::vector<LatticePoint> sources_;
  bool multi_ = false;
  bool source_weight_included_ = false;
  double source_offset_ = 0.0;
  std::optional<StripSpec> region_;
  std::int64_t phi0_ = 0;
  std::vector<Diagonal> diagonals_;
  std::vector<double> acc_;
  std::vector<std::uint64_t> pred_bits_;
  std::uint64_t ties_ = 0;
  WeightFn weight_;
};

// Low-level builder shared by every entry point below. Sources must share one
// anti-diagonal; the sweep covers the box [window_lo, window_hi].
template <WeightSource W>
DpTable build_dp(const W& weights, std::span<const LatticePoint> sources,
                 bool sources_start_at_weight, LatticePoint window_lo, LatticePoint window_hi,
                 const std::optional<StripSpec>& region);

extern template DpTable build_dp<FieldSpec>(const FieldSpec&, std::span<const LatticePoint>, bool,
                                            LatticePoint, LatticePoint,
                                            const std::optional<StripSpec>&);
extern template DpTable build_dp<FunctionWeights>(const FunctionWeights&,
                                                  std::span<const LatticePoint>, bool,
                                                  LatticePoint, LatticePoint,
                                                  const std::optional<StripSpec>&);

// Single-source table over the box [source, target].
// Throws InvalidParams unless leq(source, target), NoPath if target is unreachable.
DpTable build_table(const FieldSpec& field, LatticePoint source, LatticePoint target,
                    const std::optional<StripSpec>& region = std::nullopt);
DpTable build_table(const FunctionWeights& weights, LatticePoint source, LatticePoint target,
                    const std::optional<StripSpec>& region = std::nullopt);

// Passage time from the table's (single) source to target. Throws NoPath.
double passage_time(const DpTable& table, LatticePoint target, PassageConvention conv);

// Unconstrained T_{u,v} in one call.
double passage_time(const FieldSpec& field, LatticePoint source, LatticePoint target,
                    PassageConvention conv = PassageConvention::ExcludeBoth);

// Best weight from 0 to (n, n) with interior inside strip_for(n, delta),
// endpoints excluded. Throws NoPath when the strip admits no path.
double constrained_passage(const FieldSpec& field, std::int64_t n, double delta);

// max over (u, v) in sources x targets of the passage time under `conv`,
// interior restricted to `region`, computed by one DP seeded at every source.
// Sources must share one anti-diagonal and targets a strictly later one.
// Throws InvalidParams on bad geometry, NoPath if no pair connects.
double multi_source_sup(const FieldSpec& field, std::span<const LatticePoint> sources,
                        std::span<const LatticePoint> targets,
                        const std::optional<StripSpec>& region = std::nullopt,
                        PassageConvention conv = PassageConvention::IncludeBoth);
double multi_source_sup(const FunctionWeights& weights, std::span<const LatticePoint> sources,
                        std::span<const LatticePoint> targets,
                        const std::optional<StripSpec>& region = std::nullopt,
                        PassageConvention conv = PassageConvention::IncludeBoth);

// Lattice points of the strip's intersection with the line phi.
std::vector<LatticePoint> diagonal_segment(std::int64_t phi, std::int64_t psi_min,
                                           std::int64_t psi_max);

// The strip cut into K = floor(delta^{-3/2} / A) blocks along phi. Block i
// covers phi in [floor(2n i / K), floor(2n (i+1) / K)], so blocks tile [0, 2n]
// exactly; a_effective = delta^{-3/2} / K is the block length in units of
// delta^{3/2} n.
struct BlockDecomposition {
  std::int64_t n = 0;
  double delta = 0.0;
  double a = 0.0;
  double a_effective = 0.0;
  std::int64_t half_width = 0;
  std::vector<StripSpec> blocks;
  // Sup over the block's short sides of the passage time that keeps the
  // starting vertex and drops the final one, interior inside the block.
  std::vector<double> y_values;
  double t_n_delta = 0.0;
  double sum_y = 0.0;
};

// Throws InvalidParams if the block count is 0, NoPath if the strip is infeasible.
BlockDecomposition block_decomposition(const FieldSpec& field, std::int64_t n, double delta,
                                       double a);

}  // namespace lpp

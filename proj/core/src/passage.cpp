#include "lpp/passage.hpp"

#include <algorithm>
#include <cmath>

#include "lpp/errors.hpp"

namespace lpp {

namespace {

constexpr std::int64_t floor_div2(std::int64_t a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }
constexpr std::int64_t ceil_div2(std::int64_t a) { return -floor_div2(-a); }

struct XRange {
  std::int64_t lo;
  std::int64_t hi;
  bool empty() const { return lo > hi; }
};

XRange intersect(XRange a, XRange b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

// x-range of the region's cells on the line phi.
XRange region_range(const StripSpec& r, std::int64_t phi) {
  if (phi < r.phi_min || phi > r.phi_max) return {1, 0};
  return {ceil_div2(phi + r.psi_min), floor_div2(phi + r.psi_max)};
}

}  // namespace

const char* to_string(PassageConvention c) {
  switch (c) {
    case PassageConvention::ExcludeBoth:
      return "exclude_both";
    case PassageConvention::ExcludeLast:
      return "exclude_last";
    case PassageConvention::IncludeBoth:
      return "include_both";
  }
  return "?";
}

std::size_t DpTable::index_of(LatticePoint w) const {
  const auto& d = diagonals_[static_cast<std::size_t>(w.x + w.y - phi0_)];
  return d.offset + static_cast<std::size_t>(w.x - d.x_lo);
}

bool DpTable::stored(LatticePoint w) const {
  const std::int64_t k = w.x + w.y - phi0_;
  if (k < 0 || k >= static_cast<std::int64_t>(diagonals_.size())) return false;
  const auto& d = diagonals_[static_cast<std::size_t>(k)];
  return w.x >= d.x_lo && w.x <= d.x_hi;
}

bool DpTable::feeds_successors(LatticePoint w) const {
  if (!stored(w)) return false;
  const auto& d = diagonals_[static_cast<std::size_t>(w.x + w.y - phi0_)];
  return w.x >= d.allow_lo && w.x <= d.allow_hi;
}

double DpTable::accumulated(LatticePoint w) const {
  if (!stored(w)) return kUnreachable;
  return acc_[index_of(w)];
}

double DpTable::raw_value(LatticePoint w) const {
  if (multi_ && !source_weight_included_) {
    throw InvalidParams("raw_value: multi-source table was seeded without source weights");
  }
  const double a = accumulated(w);
  if (a == kUnreachable) return a;
  return a + source_offset_;
}

bool DpTable::came_from_left(LatticePoint w) const {
  if (!stored(w)) throw DomainError("came_from_left: cell not in table");
  const std::size_t i = index_of(w);
  return (pred_bits_[i >> 6] >> (i & 63)) & 1U;
}

double DpTable::arrival(LatticePoint w) const {
  const double a = accumulated(w);
  if (a == kUnreachable || w.x + w.y == phi0_) return a;
  return accumulated(came_from_left(w) ? LatticePoint{w.x - 1, w.y} : LatticePoint{w.x, w.y - 1});
}

template <WeightSource W>
DpTable build_dp(const W& weights, std::span<const LatticePoint> sources,
                 bool sources_start_at_weight, LatticePoint window_lo, LatticePoint window_hi,
                 const std::optional<StripSpec>& region) {
  if (sources.empty()) throw InvalidParams("build_dp: no sources");
  const std::int64_t phi0 = sources.front().x + sources.front().y;
  for (const auto& s : sources) {
    if (s.x + s.y != phi0) throw InvalidParams("build_dp: sources must share one anti-diagonal");
    if (s.x < window_lo.x || s.x > window_hi.x || s.y < window_lo.y || s.y > window_hi.y) {
      throw InvalidParams("build_dp: source outside window");
    }
  }
  const std::int64_t phi_last = window_hi.x + window_hi.y;
  if (phi_last < phi0) throw InvalidParams("build_dp: window ends before the sources");

  DpTable t;
  t.sources_.assign(sources.begin(), sources.end());
  std::sort(t.sources_.begin(), t.sources_.end());
  t.sources_.erase(std::unique(t.sources_.begin(), t.sources_.end()), t.sources_.end());
  t.multi_ = t.sources_.size() > 1;
  t.region_ = region;
  t.phi0_ = phi0;
  t.weight_ = [weights](LatticePoint p) { return static_cast<double>(weights(p.x, p.y)); };
  if (t.multi_) {
    t.source_weight_included_ = sources_start_at_weight;
  } else {
    t.source_weight_included_ = true;
    t.source_offset_ = sources_start_at_weight ? 0.0 : t.weight_(t.sources_.front());
  }

  // Geometry pass: stored and feeding ranges per diagonal.
  const std::size_t n_diag = static_cast<std::size_t>(phi_last - phi0 + 1);
  t.diagonals_.reserve(n_diag);
  std::size_t total = 0;
  {
    DpTable::Diagonal d0;
    d0.x_lo = t.sources_.front().x;
    d0.x_hi = t.sources_.back().x;
    d0.allow_lo = d0.x_lo;
    d0.allow_hi = d0.x_hi;
    d0.offset = 0;
    total = static_cast<std::size_t>(d0.x_hi - d0.x_lo + 1);
    t.diagonals_.push_back(d0);
  }
  for (std::int64_t phi = phi0 + 1; phi <= phi_last; ++phi) {
    const auto& prev = t.diagonals_.back();
    if (prev.allow_lo > prev.allow_hi) break;
    const XRange window{std::max(window_lo.x, phi - window_hi.y),
                        std::min(window_hi.x, phi - window_lo.y)};
    const XRange cells = intersect({prev.allow_lo, prev.allow_hi + 1}, window);
    if (cells.empty()) break;
    XRange allow = cells;
    if (region) allow = intersect(allow, region_range(*region, phi));
    DpTable::Diagonal d;
    d.x_lo = cells.lo;
    d.x_hi = cells.hi;
    d.allow_lo = allow.empty() ? 1 : allow.lo;
    d.allow_hi = allow.empty() ? 0 : allow.hi;
    d.offset = total;
    total += static_cast<std::size_t>(cells.hi - cells.lo + 1);
    t.diagonals_.push_back(d);
  }

  t.acc_.assign(total, kUnreachable);
  t.pred_bits_.assign((total + 63) / 64, 0);

  {
    const auto& d0 = t.diagonals_.front();
    for (const auto& s : t.sources_) {
      t.acc_[d0.offset + static_cast<std::size_t>(s.x - d0.x_lo)] =
          sources_start_at_weight ? static_cast<double>(weights(s.x, s.y)) : 0.0;
    }
  }

  double* acc = t.acc_.data();
  std::uint64_t* bits = t.pred_bits_.data();
  std::uint64_t ties = 0;
  for (std::size_t k = 1; k < t.diagonals_.size(); ++k) {
    const auto& prev = t.diagonals_[k - 1];
    const auto& cur = t.diagonals_[k];
    const std::int64_t phi = phi0 + static_cast<std::int64_t>(k);
    const double* pv = acc + prev.offset - prev.x_lo;  // pv[x] is acc at (x, phi - 1 - x)
    double* cv = acc + cur.offset - cur.x_lo;
    const std::int64_t plo = prev.allow_lo;
    const std::int64_t phi_ = prev.allow_hi;

    auto cell = [&](std::int64_t x, double left, double below) {
      const bool from_left = left >= below;
      const double best = from_left ? left : below;
      ties += (left == below) & (left != kUnreachable);
      const std::size_t idx = cur.offset + static_cast<std::size_t>(x - cur.x_lo);
      if (from_left) bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
      cv[x] = best == kUnreachable ? kUnreachable
                                   : best + static_cast<double>(weights(x, phi - x));
    };

    // Both predecessors feed on x in [plo + 1, phi_]; edges handled separately.
    const std::int64_t mid_lo = std::max(cur.x_lo, plo + 1);
    const std::int64_t mid_hi = std::min(cur.x_hi, phi_);
    for (std::int64_t x = cur.x_lo; x <= cur.x_hi && x < mid_lo; ++x) {
      const double left = (x - 1 >= plo && x - 1 <= phi_) ? pv[x - 1] : kUnreachable;
      const double below = (x >= plo && x <= phi_) ? pv[x] : kUnreachable;
      cell(x, left, below);
    }
    for (std::int64_t x = mid_lo; x <= mid_hi; ++x) {
      const double left = pv[x - 1];
      const double below = pv[x];
      const bool from_left = left >= below;
      const double best = from_left ? left : below;
      ties += (left == below) & (left != kUnreachable);
      const std::size_t idx = cur.offset + static_cast<std::size_t>(x - cur.x_lo);
      bits[idx >> 6] |= std::uint64_t{from_left} << (idx & 63);
      cv[x] = best + static_cast<double>(weights(x, phi - x));
    }
    for (std::int64_t x = std::max(mid_hi + 1, mid_lo); x <= cur.x_hi; ++x) {
      const double left = (x - 1 >= plo && x - 1 <= phi_) ? pv[x - 1] : kUnreachable;
      const double below = (x >= plo && x <= phi_) ? pv[x] : kUnreachable;
      cell(x, left, below);
    }
  }
  t.ties_ = ties;
  return t;
}

template DpTable build_dp<FieldSpec>(const FieldSpec&, std::span<const LatticePoint>, bool,
                                     LatticePoint, LatticePoint,
                                     const std::optional<StripSpec>&);
template DpTable build_dp<FunctionWeights>(const FunctionWeights&, std::span<const LatticePoint>,
                                           bool, LatticePoint, LatticePoint,
                                           const std::optional<StripSpec>&);

namespace {

template <WeightSource W>
DpTable build_table_impl(const W& weights, LatticePoint source, LatticePoint target,
                         const std::optional<StripSpec>& region) {
  if (!leq(source, target)) throw InvalidParams("build_table: source must be <= target");
  const LatticePoint src[1] = {source};
  DpTable t = build_dp(weights, std::span<const LatticePoint>(src), false, source, target, region);
  if (!t.reachable(target)) throw NoPath("build_table: target unreachable");
  return t;
}

template <WeightSource W>
double multi_source_sup_impl(const W& weights, std::span<const LatticePoint> sources,
                             std::span<const LatticePoint> targets,
                             const std::optional<StripSpec>& region, PassageConvention conv) {
  if (sources.empty() || targets.empty()) {
    throw InvalidParams("multi_source_sup: empty source or target set");
  }
  const std::int64_t phi_s = sources.front().x + sources.front().y;
  const std::int64_t phi_t = targets.front().x + targets.front().y;
  for (const auto& s : sources) {
    if (s.x + s.y != phi_s) throw InvalidParams("multi_source_sup: sources not on one line");
  }
  for (const auto& v : targets) {
    if (v.x + v.y != phi_t) throw InvalidParams("multi_source_sup: targets not on one line");
  }
  if (phi_t <= phi_s) throw InvalidParams("multi_source_sup: targets must lie on a later line");

  LatticePoint lo{std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::max()};
  LatticePoint hi{std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::min()};
  for (const auto& p : sources) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  for (const auto& p : targets) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const bool start_at_weight = conv != PassageConvention::ExcludeBoth;
  const DpTable t = build_dp(weights, sources, start_at_weight, lo, hi, region);

  double best = kUnreachable;
  for (const auto& v : targets) {
    const double val = conv == PassageConvention::IncludeBoth ? t.accumulated(v) : t.arrival(v);
    if (val == kUnreachable) continue;
    best = std::max(best, val);
  }
  if (best == kUnreachable) throw NoPath("multi_source_sup: no connected pair");
  return best;
}

}  // namespace

DpTable build_table(const FieldSpec& field, LatticePoint source, LatticePoint target,
                    const std::optional<StripSpec>& region) {
  return build_table_impl(field, source, target, region);
}

DpTable build_table(const FunctionWeights& weights, LatticePoint source, LatticePoint target,
                    const std::optional<StripSpec>& region) {
  return build_table_impl(weights, source, target, region);
}

double passage_time(const DpTable& table, LatticePoint target, PassageConvention conv) {
  if (table.multi_source()) {
    throw InvalidParams("passage_time: table has several sources; use multi_source_sup");
  }
  const double acc = table.accumulated(target);
  if (acc == kUnreachable) throw NoPath("passage_time: target unreachable");
  const LatticePoint source = table.sources().front();
  const double ws = table.weight_at(source);
  if (target == source) {
    // Single-vertex path: its one weight is counted once under IncludeBoth.
    switch (conv) {
      case PassageConvention::ExcludeBoth:
        return 0.0;
      case PassageConvention::ExcludeLast:
        return ws;
      case PassageConvention::IncludeBoth:
        return 2.0 * ws;
    }
  }
  // acc already excludes the source weight.
  const double interior = table.arrival(target);
  switch (conv) {
    case PassageConvention::ExcludeBoth:
      return interior;
    case PassageConvention::ExcludeLast:
      return interior + ws;
    case PassageConvention::IncludeBoth:
      return interior + ws + table.weight_at(target);
  }
  return interior;
}

double passage_time(const FieldSpec& field, LatticePoint source, LatticePoint target,
                    PassageConvention conv) {
  return passage_time(build_table(field, source, target), target, conv);
}

double constrained_passage(const FieldSpec& field, std::int64_t n, double delta) {
  const StripSpec strip = strip_for(n, delta);
  const LatticePoint target{n, n};
  return passage_time(build_table(field, {0, 0}, target, strip), target,
                      PassageConvention::ExcludeBoth);
}

double multi_source_sup(const FieldSpec& field, std::span<const LatticePoint> sources,
                        std::span<const LatticePoint> targets,
                        const std::optional<StripSpec>& region, PassageConvention conv) {
  return multi_source_sup_impl(field, sources, targets, region, conv);
}

double multi_source_sup(const FunctionWeights& weights, std::span<const LatticePoint> sources,
                        std::span<const LatticePoint> targets,
                        const std::optional<StripSpec>& region, PassageConvention conv) {
  return multi_source_sup_impl(weights, sources, targets, region, conv);
}

std::vector<LatticePoint> diagonal_segment(std::int64_t phi, std::int64_t psi_min,
                                           std::int64_t psi_max) {
  std::vector<LatticePoint> pts;
  std::int64_t psi = psi_min;
  if (((psi - phi) % 2) != 0) ++psi;
  for (; psi <= psi_max; psi += 2) pts.push_back(from_diag({phi, psi}));
  return pts;
}

BlockDecomposition block_decomposition(const FieldSpec& field, std::int64_t n, double delta,
                                       double a) {
  if (n < 1) throw InvalidParams("block_decomposition: n must be >= 1");
  if (!(delta > 0.0) || !(a > 0.0)) {
    throw InvalidParams("block_decomposition: delta and A must be > 0");
  }
  const double blocks_real = std::pow(delta, -1.5) / a;
  // Same 1e-9 snapping as the strip width, so exact ratios are not floored away.
  const double snapped = std::abs(blocks_real - std::round(blocks_real)) <= 1e-9 * blocks_real
                             ? std::round(blocks_real)
                             : blocks_real;
  const auto k = static_cast<std::int64_t>(std::floor(snapped));
  if (k < 1) throw InvalidParams("block_decomposition: floor(delta^{-3/2}/A) is 0");

  BlockDecomposition out;
  out.n = n;
  out.delta = delta;
  out.a = a;
  out.a_effective = std::pow(delta, -1.5) / static_cast<double>(k);
  const StripSpec strip = strip_for(n, delta);
  out.half_width = strip.psi_max;

  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t phi_lo = (2 * n * i) / k;
    const std::int64_t phi_hi = (2 * n * (i + 1)) / k;
    const StripSpec block{strip.psi_min, strip.psi_max, phi_lo, phi_hi};
    const auto lower = diagonal_segment(phi_lo, block.psi_min, block.psi_max);
    const auto upper = diagonal_segment(phi_hi, block.psi_min, block.psi_max);
    if (lower.empty() || upper.empty() || phi_hi <= phi_lo) {
      throw NoPath("block_decomposition: block has an empty short side");
    }
    out.blocks.push_back(block);
    out.y_values.push_back(
        multi_source_sup(field, lower, upper, block, PassageConvention::ExcludeLast));
  }
  out.sum_y = 0.0;
  for (double y : out.y_values) out.sum_y += y;
  out.t_n_delta = constrained_passage(field, n, delta);
  return out;
}

}  // namespace lpp

#include "lpp/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>

#include "lpp/errors.hpp"

namespace lpp {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParams(what);
}

void check_common(std::int64_t n, std::uint64_t replicas) {
  require(n >= 1, "n must be >= 1");
  require(replicas >= 1, "replicas must be >= 1");
}

template <class Hit>
EstimateSweep score_sweep(std::span<const double> params, std::span<const std::int64_t> values,
                          const RunOptions& opts, Hit&& hit) {
  EstimateSweep out;
  out.reserve(params.size());
  for (double p : params) {
    std::uint64_t hits = 0;
    for (auto v : values) hits += hit(p, v) ? 1 : 0;
    out.emplace_back(p, make_estimate(hits, values.size(), opts.z));
  }
  return out;
}

std::vector<std::int64_t> sample_one_point(const FieldSpec& base, std::int64_t n, std::int64_t t,
                                           std::uint64_t replicas, const RunOptions& opts) {
  return map_replicas(replicas, opts.workers, [&](std::uint64_t r) {
    return one_point(point_to_point_profile(replica_field(base, r), n), t);
  });
}

}  // namespace

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<std::int64_t> sample_sup_abs(const FieldSpec& base, std::int64_t n,
                                         std::uint64_t replicas, const RunOptions& opts) {
  check_common(n, replicas);
  return map_replicas(replicas, opts.workers, [&](std::uint64_t r) {
    return sup_abs(point_to_point_profile(replica_field(base, r), n));
  });
}

EstimateSweep run_small_ball(const FieldSpec& base, std::int64_t n, std::span<const double> deltas,
                             std::uint64_t replicas, const RunOptions& opts) {
  require(!deltas.empty(), "delta_list must not be empty");
  for (double d : deltas) require(d > 0.0, "delta must be > 0");
  const auto sups = sample_sup_abs(base, n, replicas, opts);
  auto out = score_sweep(deltas, sups, opts, [n](double delta, std::int64_t s) {
    return s <= scaled_width(n, delta);
  });
  // Events are nested in delta: a smaller delta can never score more hits.
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (out[i].first <= out[j].first && out[i].second.hits > out[j].second.hits) {
        throw std::logic_error("run_small_ball: nesting of small-ball events violated");
      }
    }
  }
  return out;
}

EstimateSweep run_transversal_tail(const FieldSpec& base, std::int64_t n,
                                   std::span<const double> xs, std::uint64_t replicas,
                                   const RunOptions& opts) {
  require(!xs.empty(), "x_list must not be empty");
  for (double x : xs) require(x >= 0.0, "x must be >= 0");
  const auto sups = sample_sup_abs(base, n, replicas, opts);
  return score_sweep(xs, sups, opts, [n](double x, std::int64_t s) {
    return s > scaled_width(n, x);
  });
}

EstimateSweep run_one_point(const FieldSpec& base, std::int64_t n, std::int64_t t,
                            std::span<const double> deltas, std::uint64_t replicas,
                            const RunOptions& opts) {
  check_common(n, replicas);
  require(t >= 0 && t <= 2 * n, "t must lie in [0, 2n]");
  require(!deltas.empty(), "delta_list must not be empty");
  for (double d : deltas) require(d > 0.0, "delta must be > 0");
  const auto values = sample_one_point(base, n, t, replicas, opts);
  return score_sweep(deltas, values, opts, [n](double delta, std::int64_t v) {
    return std::abs(v) <= scaled_width(n, delta);
  });
}

Estimate run_one_point_interval(const FieldSpec& base, std::int64_t n, std::int64_t t,
                                std::int64_t psi_lo, std::int64_t psi_hi, std::uint64_t replicas,
                                const RunOptions& opts) {
  check_common(n, replicas);
  require(t >= 0 && t <= 2 * n, "t must lie in [0, 2n]");
  require(psi_hi - psi_lo >= 2, "interval length must be >= 2");
  const auto values = sample_one_point(base, n, t, replicas, opts);
  std::uint64_t hits = 0;
  for (auto v : values) hits += (v >= psi_lo && v <= psi_hi) ? 1 : 0;
  return make_estimate(hits, replicas, opts.z);
}

Estimate run_constrained_tail(const FieldSpec& base, std::int64_t n, double delta, double c_const,
                              std::uint64_t replicas, const RunOptions& opts) {
  check_common(n, replicas);
  require(delta > 0.0, "delta must be > 0");
  require(c_const > 0.0 || c_const == 0.0, "c_const must be >= 0");
  const double threshold =
      std::isinf(c_const) ? -INFINITY
                          : 4.0 * static_cast<double>(n) - (c_const / delta) * std::cbrt(static_cast<double>(n));
  std::vector<char> hit;
  try {
    hit = map_replicas(replicas, opts.workers, [&](std::uint64_t r) -> char {
      return constrained_passage(replica_field(base, r), n, delta) >= threshold;
    });
  } catch (const NoPath& e) {
    throw InvalidParams(std::string("constrained strip is infeasible: ") + e.what());
  }
  std::uint64_t hits = 0;
  for (char h : hit) hits += h ? 1 : 0;
  return make_estimate(hits, replicas, opts.z);
}

std::int64_t gamma_target(std::int64_t n, double gamma) {
  require(gamma > 0.0, "gamma must be > 0");
  const double gn = gamma * static_cast<double>(n);
  const double r = std::round(gn);
  require(std::abs(gn - r) <= 1e-9 * std::max(1.0, gn), "gamma * n must be an integer");
  return static_cast<std::int64_t>(r);
}

std::vector<std::pair<std::int64_t, StatSummary>> run_limit_shape(
    const FieldSpec& base, std::span<const std::int64_t> ns, double gamma, std::uint64_t replicas,
    const RunOptions& opts) {
  require(!ns.empty(), "n_list must not be empty");
  std::vector<std::pair<std::int64_t, StatSummary>> out;
  for (auto n : ns) {
    check_common(n, replicas);
    const LatticePoint target{n, gamma_target(n, gamma)};
    const auto values = map_replicas(replicas, opts.workers, [&](std::uint64_t r) {
      return passage_time(replica_field(base, r), {0, 0}, target) / static_cast<double>(n);
    });
    out.emplace_back(n, summarize(values));
  }
  return out;
}

double tw_statistic(double passage, std::int64_t n, double gamma) {
  const double root = std::sqrt(gamma);
  const double nd = static_cast<double>(n);
  const double scale = std::pow(gamma, 1.0 / 6.0) * std::pow(1.0 + root, -4.0 / 3.0) / std::cbrt(nd);
  return scale * (passage - (1.0 + root) * (1.0 + root) * nd);
}

StatSummary run_tw_statistic(const FieldSpec& base, std::int64_t n, double gamma,
                             std::uint64_t replicas, const RunOptions& opts) {
  check_common(n, replicas);
  const LatticePoint target{n, gamma_target(n, gamma)};
  const auto values = map_replicas(replicas, opts.workers, [&](std::uint64_t r) {
    return tw_statistic(passage_time(replica_field(base, r), {0, 0}, target), n, gamma);
  });
  return summarize(values);
}

double block_z(double y, std::int64_t n, double delta, double a) {
  const double nd = static_cast<double>(n);
  const double centre = 4.0 * a * std::pow(delta, 1.5) * nd;
  const double scale = std::cbrt(a) * std::sqrt(delta) * std::cbrt(nd);
  return (y - centre) / scale;
}

BlockStats run_block_stats(const FieldSpec& base, std::int64_t n, double delta, double a,
                           std::uint64_t replicas, const RunOptions& opts) {
  check_common(n, replicas);
  require(delta > 0.0 && a > 0.0, "delta and A must be > 0");
  std::vector<BlockDecomposition> decomps;
  try {
    decomps = map_replicas(replicas, opts.workers, [&](std::uint64_t r) {
      return block_decomposition(replica_field(base, r), n, delta, a);
    });
  } catch (const NoPath& e) {
    throw InvalidParams(std::string("block decomposition infeasible: ") + e.what());
  }
  BlockStats out;
  for (const auto& d : decomps) {
    if (!(d.t_n_delta <= d.sum_y)) {
      throw std::logic_error("run_block_stats: T_n^delta exceeds the sum of block maxima");
    }
    ++out.bound_checks;
    for (double y : d.y_values) out.z_samples.push_back(block_z(y, n, delta, d.a_effective));
  }
  out.blocks_per_replica = decomps.front().y_values.size();
  out.a_effective = decomps.front().a_effective;
  out.half_width = decomps.front().half_width;
  out.z = summarize(out.z_samples);
  return out;
}

std::vector<double> survival(std::span<const double> samples, std::span<const double> rs) {
  if (samples.empty()) throw InsufficientData("survival: empty sample");
  std::vector<double> out;
  out.reserve(rs.size());
  for (double r : rs) {
    std::size_t c = 0;
    for (double s : samples) c += s >= r ? 1 : 0;
    out.push_back(static_cast<double>(c) / static_cast<double>(samples.size()));
  }
  return out;
}

CoalescenceGeometry coalescence_geometry(std::int64_t n, double m_const) {
  require(n >= 1, "n must be >= 1");
  require(m_const >= 0.0, "m_const must be >= 0");
  const std::int64_t m = scaled_width(n, m_const);
  CoalescenceGeometry g;
  g.a1 = {-m, m};
  g.a2 = {m, -m};
  g.b1 = g.a1 + LatticePoint{n, n};
  g.b2 = g.a2 + LatticePoint{n, n};
  g.psi_cap = scaled_width(n, 2.0 * m_const);
  return g;
}

Estimate run_coalescence(const FieldSpec& base, std::int64_t n, std::int64_t t, double m_const,
                         std::uint64_t replicas, const RunOptions& opts) {
  check_common(n, replicas);
  require(t >= 0 && t <= 2 * n, "t must lie in [0, 2n]");
  const CoalescenceGeometry g = coalescence_geometry(n, m_const);
  const auto hit = map_replicas(replicas, opts.workers, [&](std::uint64_t r) -> char {
    const FieldSpec field = replica_field(base, r);
    const std::int64_t p1 = one_point(profile(build_table(field, g.a1, g.b1), g.b1), t);
    const std::int64_t p2 =
        g.a2 == g.a1 ? p1 : one_point(profile(build_table(field, g.a2, g.b2), g.b2), t);
    return p1 == p2 && std::abs(p1) <= g.psi_cap;
  });
  std::uint64_t hits = 0;
  for (char h : hit) hits += h ? 1 : 0;
  return make_estimate(hits, replicas, opts.z);
}

std::int64_t crossing_index_bound(double delta) {
  require(delta > 0.0, "delta must be > 0");
  return static_cast<std::int64_t>(std::floor(0.5 / delta + 1e-9));
}

CrossingSample crossing_count(const FieldSpec& field, std::int64_t n, std::int64_t t, double delta,
                              std::int64_t i_lo, std::int64_t i_hi) {
  require(n >= 1, "n must be >= 1");
  require(t >= 0 && t <= 2 * n, "t must lie in [0, 2n]");
  require(i_lo <= i_hi, "empty index range");
  const std::int64_t step = scaled_width(n, delta);
  const double radius = scaled_length(n, delta);
  const std::size_t count = static_cast<std::size_t>(i_hi - i_lo + 1);
  std::vector<std::int64_t> at_t(count);
  CrossingSample out;

  auto compute = [&](std::int64_t i) {
    const LatticePoint u{i * step, -i * step};
    const LatticePoint v = u + LatticePoint{n, n};
    ++out.dps;
    return one_point(profile(build_table(field, u, v), v), t);
  };
  // Geodesics are ordered in i; equal values at both ends pin everything between.
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return;
    if (at_t[lo] == at_t[hi]) {
      for (std::size_t k = lo + 1; k < hi; ++k) at_t[k] = at_t[lo];
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    at_t[mid] = compute(i_lo + static_cast<std::int64_t>(mid));
    fill(lo, mid);
    fill(mid, hi);
  };
  at_t[0] = compute(i_lo);
  if (count > 1) {
    at_t[count - 1] = compute(i_hi);
    fill(0, count - 1);
  }
  for (std::size_t k = 0; k < count; ++k) {
    const std::int64_t i = i_lo + static_cast<std::int64_t>(k);
    const double dev = std::abs(static_cast<double>(at_t[k] - 2 * i * step));
    if (dev < radius) ++out.count;
  }
  return out;
}

CrossingStats run_crossing_count(const FieldSpec& base, std::int64_t n, std::int64_t t,
                                 double delta, std::int64_t i_lo, std::int64_t i_hi,
                                 std::uint64_t replicas, const RunOptions& opts) {
  check_common(n, replicas);
  const std::int64_t bound = crossing_index_bound(delta);
  require(i_lo >= -bound && i_hi <= bound, "index range exceeds floor(1/(2 delta))");
  const auto samples = map_replicas(replicas, opts.workers, [&](std::uint64_t r) {
    return crossing_count(replica_field(base, r), n, t, delta, i_lo, i_hi);
  });
  std::vector<double> counts;
  counts.reserve(samples.size());
  double dps = 0.0;
  for (const auto& s : samples) {
    counts.push_back(static_cast<double>(s.count));
    dps += static_cast<double>(s.dps);
  }
  CrossingStats out;
  out.counts = summarize(counts);
  out.mean_dps = dps / static_cast<double>(samples.size());
  return out;
}

}  // namespace lpp

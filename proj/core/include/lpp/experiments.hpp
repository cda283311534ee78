#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "lpp/geodesic.hpp"
#include "lpp/lattice.hpp"
#include "lpp/passage.hpp"
#include "lpp/randfield.hpp"
#include "lpp/stats.hpp"

namespace lpp {

struct RunOptions {
  unsigned workers = 0;  // 0: std::thread::hardware_concurrency()
  double z = kDefaultZ;  // Wilson level for every Estimate
};

unsigned resolve_workers(unsigned requested);

// Evaluates fn(r) for r in [0, replicas) on a pool of workers. Results land at
// index r, so the output does not depend on scheduling. The first exception
// thrown by any replica is rethrown after the pool drains.
template <class Fn>
auto map_replicas(std::uint64_t replicas, unsigned workers, Fn&& fn)
    -> std::vector<decltype(fn(std::uint64_t{}))> {
  using R = decltype(fn(std::uint64_t{}));
  std::vector<R> out(replicas);
  const unsigned pool = std::max(1U, std::min<unsigned>(resolve_workers(workers),
                                                         static_cast<unsigned>(std::max<std::uint64_t>(replicas, 1))));
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const std::uint64_t r = next.fetch_add(1);
      if (r >= replicas || failed.load()) return;
      try {
        out[r] = fn(r);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (pool == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(pool);
    for (unsigned i = 0; i < pool; ++i) threads.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

inline FieldSpec replica_field(const FieldSpec& base, std::uint64_t r) {
  return FieldSpec{replica_seed(base.seed, r)};
}

using EstimateSweep = std::vector<std::pair<double, Estimate>>;

// sup_t |Gamma_n(t)| for each replica.
std::vector<std::int64_t> sample_sup_abs(const FieldSpec& base, std::int64_t n,
                                         std::uint64_t replicas, const RunOptions& opts = {});

// P(sup_t |Gamma_n(t)| <= delta n^{2/3}) for every delta, all scored from one
// geodesic per replica.
EstimateSweep run_small_ball(const FieldSpec& base, std::int64_t n, std::span<const double> deltas,
                             std::uint64_t replicas, const RunOptions& opts = {});

// P(sup_t |Gamma_n(t)| > x n^{2/3}).
EstimateSweep run_transversal_tail(const FieldSpec& base, std::int64_t n,
                                   std::span<const double> xs, std::uint64_t replicas,
                                   const RunOptions& opts = {});

// P(|Gamma_n(t)| <= delta n^{2/3}).
EstimateSweep run_one_point(const FieldSpec& base, std::int64_t n, std::int64_t t,
                            std::span<const double> deltas, std::uint64_t replicas,
                            const RunOptions& opts = {});

// P(Gamma_n(t) in [psi_lo, psi_hi]); requires psi_hi - psi_lo >= 2.
Estimate run_one_point_interval(const FieldSpec& base, std::int64_t n, std::int64_t t,
                                std::int64_t psi_lo, std::int64_t psi_hi, std::uint64_t replicas,
                                const RunOptions& opts = {});

// P(T_n^delta >= 4n - (c / delta) n^{1/3}).
Estimate run_constrained_tail(const FieldSpec& base, std::int64_t n, double delta, double c_const,
                              std::uint64_t replicas, const RunOptions& opts = {});

// Requires gamma * n to be an integer (within 1e-9).
std::int64_t gamma_target(std::int64_t n, double gamma);

// Summary of T_{0,(n, gamma n)} / n for each n.
std::vector<std::pair<std::int64_t, StatSummary>> run_limit_shape(
    const FieldSpec& base, std::span<const std::int64_t> ns, double gamma, std::uint64_t replicas,
    const RunOptions& opts = {});

// gamma^{1/6} (1 + sqrt gamma)^{-4/3} n^{-1/3} (T - (1 + sqrt gamma)^2 n).
double tw_statistic(double passage, std::int64_t n, double gamma);

StatSummary run_tw_statistic(const FieldSpec& base, std::int64_t n, double gamma,
                             std::uint64_t replicas, const RunOptions& opts = {});

// (Y - 4 A delta^{3/2} n) / (A^{1/3} delta^{1/2} n^{1/3}).
double block_z(double y, std::int64_t n, double delta, double a);

struct BlockStats {
  StatSummary z;
  std::vector<double> z_samples;  // replica-major, block-minor
  std::uint64_t blocks_per_replica = 0;
  double a_effective = 0.0;
  std::int64_t half_width = 0;
  std::uint64_t bound_checks = 0;  // replicas on which T_n^delta <= sum Y_i was verified
};

// Pooled Z_i over blocks and replicas, with Z computed at the effective block
// length. Throws std::logic_error if T_n^delta <= sum Y_i ever fails.
BlockStats run_block_stats(const FieldSpec& base, std::int64_t n, double delta, double a,
                           std::uint64_t replicas, const RunOptions& opts = {});

// Empirical P(Z >= r) for each r.
std::vector<double> survival(std::span<const double> samples, std::span<const double> rs);

struct CoalescenceGeometry {
  LatticePoint a1, a2, b1, b2;
  std::int64_t psi_cap = 0;
};
CoalescenceGeometry coalescence_geometry(std::int64_t n, double m_const);

// P(Gamma_{a1,b1}(t) == Gamma_{a2,b2}(t) and |that psi| <= 2 M n^{2/3}).
Estimate run_coalescence(const FieldSpec& base, std::int64_t n, std::int64_t t, double m_const,
                         std::uint64_t replicas, const RunOptions& opts = {});

struct CrossingSample {
  std::uint64_t count = 0;
  std::uint64_t dps = 0;  // DPs actually run after ordering-based pruning
};

// For u_i = (i s, -i s), s = floor(delta n^{2/3}), v_i = u_i + (n, n): the
// number of i in [i_lo, i_hi] with |Gamma_{u_i,v_i}(t) - psi(u_i)| < delta n^{2/3}.
// Geodesics are ordered in i, so whenever the outer two of a sub-range meet
// at time t the inner ones are skipped.
CrossingSample crossing_count(const FieldSpec& field, std::int64_t n, std::int64_t t, double delta,
                              std::int64_t i_lo, std::int64_t i_hi);

// Largest |i| allowed: floor(delta^{-1} / 2).
std::int64_t crossing_index_bound(double delta);

struct CrossingStats {
  StatSummary counts;
  double mean_dps = 0.0;
};

CrossingStats run_crossing_count(const FieldSpec& base, std::int64_t n, std::int64_t t,
                                 double delta, std::int64_t i_lo, std::int64_t i_hi,
                                 std::uint64_t replicas, const RunOptions& opts = {});

}  // namespace lpp

#include "lpp/runner.hpp"

#include <chrono>
#include <cmath>

#include "lpp/experiments.hpp"
#include "lpp/oracle.hpp"

namespace lpp::cli {

using nlohmann::json;

namespace {

constexpr double kSurvivalGrid[] = {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};

ResultRecord base_record(const ExperimentConfig& c) {
  ResultRecord r;
  r.experiment = to_string(c.experiment);
  r.config = config_echo(c);
  r.artifact_version = artifact_version();
  return r;
}

void add_sweep(RunResult& out, const ExperimentConfig& c, const char* param, std::int64_t n,
               const EstimateSweep& sweep, const json& shared = json::object()) {
  for (const auto& [value, est] : sweep) {
    ResultRecord r = base_record(c);
    r.point = shared;
    r.point[param] = value;
    r.point["effective_width"] = scaled_width(n, value);
    r.estimate = est;
    out.records.push_back(std::move(r));
  }
}

}  // namespace

RunResult run(const ExperimentConfig& c, unsigned workers) {
  RunOptions opts;
  opts.workers = workers > 0 ? workers : c.workers.value_or(0);
  opts.z = c.z;
  const FieldSpec base{c.base_seed};
  const auto start = std::chrono::steady_clock::now();

  RunResult out;
  switch (c.experiment) {
    case ExperimentKind::SmallBall:
      add_sweep(out, c, "delta", *c.n, run_small_ball(base, *c.n, c.delta_list, c.replicas, opts),
                json{{"n", *c.n}});
      break;
    case ExperimentKind::TransversalTail:
      add_sweep(out, c, "x", *c.n, run_transversal_tail(base, *c.n, c.x_list, c.replicas, opts),
                json{{"n", *c.n}});
      break;
    case ExperimentKind::OnePoint:
      add_sweep(out, c, "delta", *c.n,
                run_one_point(base, *c.n, *c.t, c.delta_list, c.replicas, opts),
                json{{"n", *c.n}, {"t", *c.t}});
      break;
    case ExperimentKind::OnePointInterval: {
      ResultRecord r = base_record(c);
      r.point = json{{"n", *c.n}, {"t", *c.t}, {"psi_lo", *c.psi_lo}, {"psi_hi", *c.psi_hi}};
      r.estimate =
          run_one_point_interval(base, *c.n, *c.t, *c.psi_lo, *c.psi_hi, c.replicas, opts);
      out.records.push_back(std::move(r));
      break;
    }
    case ExperimentKind::ConstrainedTail: {
      ResultRecord r = base_record(c);
      const double nd = static_cast<double>(*c.n);
      r.point = json{{"n", *c.n},
                     {"delta", *c.delta},
                     {"c_const", *c.c_const},
                     {"effective_width", scaled_width(*c.n, *c.delta)},
                     {"threshold", 4.0 * nd - (*c.c_const / *c.delta) * std::cbrt(nd)}};
      r.estimate = run_constrained_tail(base, *c.n, *c.delta, *c.c_const, c.replicas, opts);
      out.records.push_back(std::move(r));
      break;
    }
    case ExperimentKind::LimitShape: {
      const double root = std::sqrt(*c.gamma);
      for (const auto& [n, summary] : run_limit_shape(base, c.n_list, *c.gamma, c.replicas, opts)) {
        ResultRecord r = base_record(c);
        r.point = json{{"n", n}, {"gamma", *c.gamma}, {"limit", (1.0 + root) * (1.0 + root)}};
        r.summary = summary;
        out.records.push_back(std::move(r));
      }
      break;
    }
    case ExperimentKind::TwStat: {
      ResultRecord r = base_record(c);
      r.point = json{{"n", *c.n}, {"gamma", *c.gamma}};
      r.summary = run_tw_statistic(base, *c.n, *c.gamma, c.replicas, opts);
      out.records.push_back(std::move(r));
      break;
    }
    case ExperimentKind::BlockStats: {
      const BlockStats bs = run_block_stats(base, *c.n, *c.delta, *c.a, c.replicas, opts);
      ResultRecord r = base_record(c);
      r.point = json{{"n", *c.n},
                     {"delta", *c.delta},
                     {"A", *c.a},
                     {"a_effective", bs.a_effective},
                     {"blocks", bs.blocks_per_replica},
                     {"effective_width", bs.half_width}};
      r.summary = bs.z;
      const auto surv = survival(bs.z_samples, kSurvivalGrid);
      json s = json::array();
      for (std::size_t i = 0; i < surv.size(); ++i) s.push_back(json{{"r", kSurvivalGrid[i]}, {"p", surv[i]}});
      r.extra = json{{"survival", s}, {"bound_checks", bs.bound_checks}};
      out.records.push_back(std::move(r));
      break;
    }
    case ExperimentKind::Coalescence: {
      const CoalescenceGeometry g = coalescence_geometry(*c.n, *c.m_const);
      ResultRecord r = base_record(c);
      r.point = json{{"n", *c.n}, {"t", *c.t}, {"m_const", *c.m_const}, {"offset", g.a2.x},
                     {"psi_cap", g.psi_cap}};
      r.estimate = run_coalescence(base, *c.n, *c.t, *c.m_const, c.replicas, opts);
      out.records.push_back(std::move(r));
      break;
    }
    case ExperimentKind::CrossingCount: {
      const CrossingStats cs =
          run_crossing_count(base, *c.n, *c.t, *c.delta, *c.i_min, *c.i_max, c.replicas, opts);
      ResultRecord r = base_record(c);
      r.point = json{{"n", *c.n}, {"t", *c.t}, {"delta", *c.delta}, {"i_min", *c.i_min},
                     {"i_max", *c.i_max}, {"step", scaled_width(*c.n, *c.delta)}};
      r.summary = cs.counts;
      r.extra = json{{"mean_dps", cs.mean_dps}};
      out.records.push_back(std::move(r));
      break;
    }
    case ExperimentKind::OracleCheck: {
      const auto rep = oracle::check_agreement(c.replicas, c.base_seed);
      ResultRecord r = base_record(c);
      r.point = json{{"cases", rep.cases}};
      const std::uint64_t bad = rep.value_mismatches + rep.path_mismatches + rep.nopath_mismatches;
      r.estimate = make_estimate(rep.cases - std::min(bad, rep.cases), rep.cases, c.z);
      r.extra = json{{"value_mismatches", rep.value_mismatches},
                     {"path_mismatches", rep.path_mismatches},
                     {"nopath_mismatches", rep.nopath_mismatches},
                     {"no_path_cases", rep.no_path_cases},
                     {"max_rel_error", rep.max_rel_error}};
      out.oracle_ok = rep.ok();
      out.records.push_back(std::move(r));
      break;
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string stamp = utc_timestamp();
  for (auto& r : out.records) {
    r.wall_time_seconds = wall;
    r.timestamp = stamp;
  }
  return out;
}

void write_jsonl(std::ostream& os, const std::vector<ResultRecord>& records) {
  for (const auto& r : records) os << to_jsonl_line(r) << '\n';
}

}  // namespace lpp::cli

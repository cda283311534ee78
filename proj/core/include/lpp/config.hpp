#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace lpp::cli {

enum class ExperimentKind {
  SmallBall,
  OnePoint,
  OnePointInterval,
  ConstrainedTail,
  TransversalTail,
  LimitShape,
  TwStat,
  BlockStats,
  Coalescence,
  CrossingCount,
  OracleCheck,
};

const char* to_string(ExperimentKind k);
std::optional<ExperimentKind> experiment_from_string(std::string_view s);

// Flat experiment description. Which optional fields are present is fixed
// by `experiment`; parse_config rejects anything else.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::SmallBall;
  std::optional<std::int64_t> n;
  std::vector<std::int64_t> n_list;
  std::optional<std::int64_t> t;
  std::vector<double> delta_list;
  std::optional<double> delta;
  std::optional<double> gamma;
  std::optional<double> a;
  std::optional<double> c_const;
  std::optional<double> m_const;
  std::vector<double> x_list;
  std::optional<std::int64_t> psi_lo;
  std::optional<std::int64_t> psi_hi;
  std::optional<std::int64_t> i_min;
  std::optional<std::int64_t> i_max;
  std::uint64_t replicas = 0;
  std::uint64_t base_seed = 0;
  std::optional<unsigned> workers;
  std::optional<std::string> output_path;
  double z = 1.96;
};

// Parses and validates a JSON config document. Throws ParseError on malformed
// JSON and ValidationError (carrying the offending key) on anything else.
ExperimentConfig parse_config(std::string_view text);

// Canonical echo written into every record: the parameters that determine
// the numbers, without execution details (workers, output_path).
nlohmann::json config_echo(const ExperimentConfig& c);

}  // namespace lpp::cli

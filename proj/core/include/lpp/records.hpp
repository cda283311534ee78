#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpp/stats.hpp"

namespace lpp::cli {

inline constexpr int kSchemaVersion = 1;

const char* artifact_version();

// One JSON Lines record per parameter point of an experiment.
struct ResultRecord {
  int schema_version = kSchemaVersion;
  std::string experiment;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json point = nlohmann::json::object();
  std::optional<Estimate> estimate;
  std::optional<StatSummary> summary;
  nlohmann::json extra = nlohmann::json::object();
  double wall_time_seconds = 0.0;
  std::string artifact_version;
  std::string timestamp;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

nlohmann::json estimate_to_json(const Estimate& e);
Estimate estimate_from_json(const nlohmann::json& j);
nlohmann::json summary_to_json(const StatSummary& s);
StatSummary summary_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ResultRecord& r);

// Throws SchemaError on a missing field, a wrong type or an unsupported
// schema_version.
ResultRecord record_from_json(const nlohmann::json& j);

// Single JSONL line (no trailing newline). Keys are sorted, so equal records
// serialise to equal bytes.
std::string to_jsonl_line(const ResultRecord& r);

// The line with the run-dependent fields (timestamp, wall_time_seconds) removed.
std::string deterministic_body(const ResultRecord& r);

std::vector<ResultRecord> parse_jsonl(std::string_view text);

std::string utc_timestamp();

}  // namespace lpp::cli

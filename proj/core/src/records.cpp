#include "lpp/records.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include "lpp/errors.hpp"

#ifndef LPP_VERSION
#define LPP_VERSION "0.0.0"
#endif

namespace lpp::cli {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string("record is missing field '") + key + "'");
  }
  return j.at(key);
}

template <class T>
T as(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("record field '") + key + "' has the wrong type: " + e.what());
  }
}

double as_real(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw SchemaError(std::string("record field '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

const char* artifact_version() { return LPP_VERSION; }

json estimate_to_json(const Estimate& e) {
  return json{{"hits", e.hits}, {"trials", e.trials}, {"p_hat", e.p_hat},
              {"ci_lo", e.ci_lo}, {"ci_hi", e.ci_hi}, {"z", e.z}};
}

Estimate estimate_from_json(const json& j) {
  Estimate e;
  e.hits = as<std::uint64_t>(j, "hits");
  e.trials = as<std::uint64_t>(j, "trials");
  e.p_hat = as_real(j, "p_hat");
  e.ci_lo = as_real(j, "ci_lo");
  e.ci_hi = as_real(j, "ci_hi");
  e.z = as_real(j, "z");
  if (e.trials < 1 || e.hits > e.trials || !(0.0 <= e.ci_lo && e.ci_lo <= e.p_hat &&
                                             e.p_hat <= e.ci_hi && e.ci_hi <= 1.0)) {
    throw SchemaError("estimate violates 0 <= ci_lo <= p_hat <= ci_hi <= 1");
  }
  return e;
}

json summary_to_json(const StatSummary& s) {
  return json{{"count", s.count}, {"mean", s.mean}, {"variance", s.variance},
              {"min", s.min},     {"max", s.max},   {"q05", s.q05},
              {"q25", s.q25},     {"q50", s.q50},   {"q75", s.q75},
              {"q95", s.q95}};
}

StatSummary summary_from_json(const json& j) {
  StatSummary s;
  s.count = as<std::uint64_t>(j, "count");
  s.mean = as_real(j, "mean");
  s.variance = as_real(j, "variance");
  s.min = as_real(j, "min");
  s.max = as_real(j, "max");
  s.q05 = as_real(j, "q05");
  s.q25 = as_real(j, "q25");
  s.q50 = as_real(j, "q50");
  s.q75 = as_real(j, "q75");
  s.q95 = as_real(j, "q95");
  return s;
}

json to_json(const ResultRecord& r) {
  json j = json::object();
  j["schema_version"] = r.schema_version;
  j["experiment"] = r.experiment;
  j["config"] = r.config;
  j["point"] = r.point;
  j["estimate"] = r.estimate ? estimate_to_json(*r.estimate) : json(nullptr);
  j["summary"] = r.summary ? summary_to_json(*r.summary) : json(nullptr);
  j["extra"] = r.extra;
  j["wall_time_seconds"] = r.wall_time_seconds;
  j["artifact_version"] = r.artifact_version;
  j["timestamp"] = r.timestamp;
  return j;
}

ResultRecord record_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("record must be a JSON object");
  ResultRecord r;
  r.schema_version = as<int>(j, "schema_version");
  if (r.schema_version != kSchemaVersion) {
    throw SchemaError("unsupported schema_version " + std::to_string(r.schema_version) +
                      " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  r.experiment = as<std::string>(j, "experiment");
  r.config = field(j, "config");
  r.point = field(j, "point");
  if (!r.config.is_object() || !r.point.is_object()) {
    throw SchemaError("record 'config' and 'point' must be objects");
  }
  const json& est = field(j, "estimate");
  if (!est.is_null()) r.estimate = estimate_from_json(est);
  const json& sum = field(j, "summary");
  if (!sum.is_null()) r.summary = summary_from_json(sum);
  r.extra = field(j, "extra");
  r.wall_time_seconds = as_real(j, "wall_time_seconds");
  r.artifact_version = as<std::string>(j, "artifact_version");
  r.timestamp = as<std::string>(j, "timestamp");
  return r;
}

std::string to_jsonl_line(const ResultRecord& r) { return to_json(r).dump(); }

std::string deterministic_body(const ResultRecord& r) {
  json j = to_json(r);
  j.erase("timestamp");
  j.erase("wall_time_seconds");
  return j.dump();
}

std::vector<ResultRecord> parse_jsonl(std::string_view text) {
  std::vector<ResultRecord> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    json j;
    try {
      j = json::parse(line.begin(), line.end());
    } catch (const json::parse_error& e) {
      throw SchemaError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    try {
      out.push_back(record_from_json(j));
    } catch (const SchemaError& e) {
      throw SchemaError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (end == text.size()) break;
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace lpp::cli

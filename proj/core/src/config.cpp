#include "lpp/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "lpp/errors.hpp"
#include "lpp/experiments.hpp"

namespace lpp::cli {

namespace {

using nlohmann::json;

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr std::array<KindName, 11> kKinds{{
    {ExperimentKind::SmallBall, "small_ball"},
    {ExperimentKind::OnePoint, "one_point"},
    {ExperimentKind::OnePointInterval, "one_point_interval"},
    {ExperimentKind::ConstrainedTail, "constrained_tail"},
    {ExperimentKind::TransversalTail, "transversal_tail"},
    {ExperimentKind::LimitShape, "limit_shape"},
    {ExperimentKind::TwStat, "tw_stat"},
    {ExperimentKind::BlockStats, "block_stats"},
    {ExperimentKind::Coalescence, "coalescence"},
    {ExperimentKind::CrossingCount, "crossing_count"},
    {ExperimentKind::OracleCheck, "oracle_check"},
}};

const std::set<std::string> kCommonKeys{"experiment", "replicas", "base_seed", "workers",
                                        "output_path", "z"};

// Parameter keys each experiment requires and additionally accepts.
struct KeySets {
  std::set<std::string> required;
  std::set<std::string> optional;
};

KeySets keys_for(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::SmallBall:
      return {{"n", "delta_list"}, {}};
    case ExperimentKind::OnePoint:
      return {{"n", "t", "delta_list"}, {}};
    case ExperimentKind::OnePointInterval:
      return {{"n", "t", "psi_lo", "psi_hi"}, {}};
    case ExperimentKind::ConstrainedTail:
      return {{"n", "delta", "c_const"}, {}};
    case ExperimentKind::TransversalTail:
      return {{"n", "x_list"}, {}};
    case ExperimentKind::LimitShape:
      return {{"n_list", "gamma"}, {}};
    case ExperimentKind::TwStat:
      return {{"n", "gamma"}, {}};
    case ExperimentKind::BlockStats:
      return {{"n", "delta", "A"}, {}};
    case ExperimentKind::Coalescence:
      return {{"n", "t", "m_const"}, {}};
    case ExperimentKind::CrossingCount:
      return {{"n", "t", "delta"}, {"i_min", "i_max"}};
    case ExperimentKind::OracleCheck:
      return {{}, {}};
  }
  return {};
}

const std::set<std::string> kAllParamKeys{"n",      "n_list", "t",      "delta_list", "delta",
                                          "gamma",  "A",      "c_const", "m_const",   "x_list",
                                          "psi_lo", "psi_hi", "i_min",  "i_max"};

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ValidationError(key, what);
}

std::int64_t get_int(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer()) fail(key, "must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t get_uint(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  fail(key, "must be a non-negative integer");
}

double get_real(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) fail(key, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(key, "must be finite");
  return d;
}

std::vector<double> get_real_list(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_array() || v.empty()) fail(key, "must be a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(key, "must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::int64_t> get_int_list(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_array() || v.empty()) fail(key, "must be a non-empty array of integers");
  std::vector<std::int64_t> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) fail(key, "must contain only integers");
    out.push_back(e.get<std::int64_t>());
  }
  return out;
}

void check_positive_n(std::int64_t n, const std::string& key) {
  if (n < 1) fail(key, "must be >= 1");
}

}  // namespace

const char* to_string(ExperimentKind k) {
  for (const auto& kn : kKinds) {
    if (kn.kind == k) return kn.name;
  }
  return "?";
}

std::optional<ExperimentKind> experiment_from_string(std::string_view s) {
  for (const auto& kn : kKinds) {
    if (s == kn.name) return kn.kind;
  }
  return std::nullopt;
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config must be a JSON object");

  ExperimentConfig c;
  if (!doc.contains("experiment")) fail("experiment", "missing required key");
  if (!doc["experiment"].is_string()) fail("experiment", "must be a string");
  const auto kind = experiment_from_string(doc["experiment"].get<std::string>());
  if (!kind) fail("experiment", "unknown experiment '" + doc["experiment"].get<std::string>() + "'");
  c.experiment = *kind;

  const KeySets keys = keys_for(c.experiment);
  for (const auto& [key, value] : doc.items()) {
    if (kCommonKeys.count(key)) continue;
    if (!kAllParamKeys.count(key)) fail(key, "unknown key");
    if (!keys.required.count(key) && !keys.optional.count(key)) {
      fail(key, std::string("not used by experiment ") + to_string(c.experiment));
    }
  }
  for (const auto& key : keys.required) {
    if (!doc.contains(key)) fail(key, "missing required key");
  }
  if (!doc.contains("replicas")) fail("replicas", "missing required key");
  c.replicas = get_uint(doc, "replicas");
  if (c.replicas < 1) fail("replicas", "must be >= 1");
  if (doc.contains("base_seed")) c.base_seed = get_uint(doc, "base_seed");
  if (doc.contains("workers")) {
    const auto w = get_uint(doc, "workers");
    if (w < 1) fail("workers", "must be >= 1");
    c.workers = static_cast<unsigned>(w);
  }
  if (doc.contains("output_path")) {
    if (!doc["output_path"].is_string()) fail("output_path", "must be a string");
    c.output_path = doc["output_path"].get<std::string>();
  }
  if (doc.contains("z")) {
    c.z = get_real(doc, "z");
    if (!(c.z > 0.0)) fail("z", "must be > 0");
  }

  if (doc.contains("n")) {
    c.n = get_int(doc, "n");
    check_positive_n(*c.n, "n");
  }
  if (doc.contains("n_list")) {
    c.n_list = get_int_list(doc, "n_list");
    for (auto n : c.n_list) check_positive_n(n, "n_list");
  }
  if (doc.contains("t")) {
    c.t = get_int(doc, "t");
    if (*c.t < 0 || *c.t > 2 * *c.n) fail("t", "must lie in [0, 2n]");
  }
  if (doc.contains("delta_list")) {
    c.delta_list = get_real_list(doc, "delta_list");
    for (double d : c.delta_list) {
      if (!(d > 0.0) || !std::isfinite(d)) fail("delta_list", "entries must be finite and > 0");
    }
  }
  if (doc.contains("delta")) {
    c.delta = get_real(doc, "delta");
    if (!(*c.delta > 0.0)) fail("delta", "must be > 0");
  }
  if (doc.contains("gamma")) {
    c.gamma = get_real(doc, "gamma");
    if (!(*c.gamma > 0.0)) fail("gamma", "must be > 0");
    std::vector<std::int64_t> ns = c.n_list;
    if (c.n) ns.push_back(*c.n);
    for (auto n : ns) {
      try {
        (void)gamma_target(n, *c.gamma);
      } catch (const InvalidParams&) {
        fail("gamma", "gamma * n must be an integer for every n");
      }
    }
  }
  if (doc.contains("A")) {
    c.a = get_real(doc, "A");
    if (!(*c.a > 0.0)) fail("A", "must be > 0");
    if (std::floor(std::pow(*c.delta, -1.5) / *c.a + 1e-9) < 1.0) {
      fail("A", "floor(delta^{-3/2} / A) must be >= 1");
    }
  }
  if (doc.contains("c_const")) {
    c.c_const = get_real(doc, "c_const");
    if (*c.c_const < 0.0) fail("c_const", "must be >= 0");
  }
  if (doc.contains("m_const")) {
    c.m_const = get_real(doc, "m_const");
    if (*c.m_const < 0.0) fail("m_const", "must be >= 0");
  }
  if (doc.contains("x_list")) {
    c.x_list = get_real_list(doc, "x_list");
    for (double x : c.x_list) {
      if (!(x >= 0.0) || !std::isfinite(x)) fail("x_list", "entries must be finite and >= 0");
    }
  }
  if (doc.contains("psi_lo")) c.psi_lo = get_int(doc, "psi_lo");
  if (doc.contains("psi_hi")) c.psi_hi = get_int(doc, "psi_hi");
  if (c.psi_lo && c.psi_hi && *c.psi_hi - *c.psi_lo < 2) {
    fail("psi_hi", "interval [psi_lo, psi_hi] must have length >= 2");
  }
  if (c.experiment == ExperimentKind::CrossingCount) {
    const std::int64_t bound = crossing_index_bound(*c.delta);
    c.i_min = doc.contains("i_min") ? get_int(doc, "i_min") : -bound;
    c.i_max = doc.contains("i_max") ? get_int(doc, "i_max") : bound;
    if (*c.i_min < -bound) fail("i_min", "must be >= -floor(1/(2 delta))");
    if (*c.i_max > bound) fail("i_max", "must be <= floor(1/(2 delta))");
    if (*c.i_min > *c.i_max) fail("i_max", "must be >= i_min");
  }
  return c;
}

nlohmann::json config_echo(const ExperimentConfig& c) {
  json j = json::object();
  j["experiment"] = to_string(c.experiment);
  j["replicas"] = c.replicas;
  j["base_seed"] = c.base_seed;
  j["z"] = c.z;
  if (c.n) j["n"] = *c.n;
  if (!c.n_list.empty()) j["n_list"] = c.n_list;
  if (c.t) j["t"] = *c.t;
  if (!c.delta_list.empty()) j["delta_list"] = c.delta_list;
  if (c.delta) j["delta"] = *c.delta;
  if (c.gamma) j["gamma"] = *c.gamma;
  if (c.a) j["A"] = *c.a;
  if (c.c_const) j["c_const"] = *c.c_const;
  if (c.m_const) j["m_const"] = *c.m_const;
  if (!c.x_list.empty()) j["x_list"] = c.x_list;
  if (c.psi_lo) j["psi_lo"] = *c.psi_lo;
  if (c.psi_hi) j["psi_hi"] = *c.psi_hi;
  if (c.i_min) j["i_min"] = *c.i_min;
  if (c.i_max) j["i_max"] = *c.i_max;
  return j;
}

}  // namespace lpp::cli

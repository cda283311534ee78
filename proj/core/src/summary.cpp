#include "lpp/summary.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "lpp/errors.hpp"

namespace lpp::cli {

using nlohmann::json;

namespace {

// Shortest representation that round-trips.
std::string fmt_real(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fmt_real(v.get<double>());
  return v.dump();
}

// Config parameters other than the swept list, joined as k=v;k=v.
std::string group_key(const ResultRecord& r) {
  std::string key;
  for (const auto& [k, v] : r.config.items()) {
    if (k == "experiment" || v.is_array()) continue;
    if (!key.empty()) key += ';';
    key += k + "=" + scalar_text(v);
  }
  return key;
}

// The parameter this record varies over, if the experiment sweeps one.
std::optional<std::string> sweep_param(const ResultRecord& r) {
  for (const char* p : {"delta", "x"}) {
    if (r.config.contains(std::string(p) + "_list") && r.point.contains(p)) return p;
  }
  if (r.config.contains("n_list") && r.point.contains("n")) return "n";
  return std::nullopt;
}

struct Row {
  std::string param_name;
  double param_value = 0.0;
  const ResultRecord* record = nullptr;
};

void write_row(std::ostringstream& os, const std::string& experiment, const std::string& group,
               const Row& row, const FitResult* fit) {
  std::vector<std::string> cells(summary_columns().size());
  cells[0] = experiment;
  cells[1] = group;
  cells[2] = row.param_name;
  if (row.record) {
    cells[3] = row.param_name.empty() ? "" : fmt_real(row.param_value);
    if (const auto& e = row.record->estimate) {
      cells[4] = std::to_string(e->hits);
      cells[5] = std::to_string(e->trials);
      cells[6] = fmt_real(e->p_hat);
      cells[7] = fmt_real(e->ci_lo);
      cells[8] = fmt_real(e->ci_hi);
    }
    if (const auto& s = row.record->summary) {
      cells[9] = std::to_string(s->count);
      cells[10] = fmt_real(s->mean);
      cells[11] = fmt_real(s->variance);
      cells[12] = fmt_real(s->min);
      cells[13] = fmt_real(s->q05);
      cells[14] = fmt_real(s->q25);
      cells[15] = fmt_real(s->q50);
      cells[16] = fmt_real(s->q75);
      cells[17] = fmt_real(s->q95);
      cells[18] = fmt_real(s->max);
    }
  }
  if (fit) {
    cells[19] = to_string(fit->model);
    cells[20] = fmt_real(fit->slope);
    cells[21] = fmt_real(fit->intercept);
    cells[22] = fmt_real(fit->r_squared);
    cells[23] = std::to_string(fit->n_points);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

}  // namespace

const std::vector<std::string>& summary_columns() {
  static const std::vector<std::string> cols{
      "experiment", "group",   "param_name", "param_value", "hits",      "trials",
      "p_hat",      "ci_lo",   "ci_hi",      "count",       "mean",      "variance",
      "min",        "q05",     "q25",        "q50",         "q75",       "q95",
      "max",        "fit_model", "fit_slope", "fit_intercept", "fit_r_squared", "fit_points"};
  return cols;
}

std::string summarize_records(const std::vector<ResultRecord>& records) {
  std::ostringstream os;
  const auto& cols = summary_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';

  std::map<std::pair<std::string, std::string>, std::vector<Row>> groups;
  for (const auto& r : records) {
    Row row;
    row.record = &r;
    if (const auto p = sweep_param(r)) {
      row.param_name = *p;
      row.param_value = r.point.at(*p).get<double>();
    }
    groups[{r.experiment, group_key(r)}].push_back(row);
  }

  for (auto& [key, rows] : groups) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.param_value < b.param_value; });
    for (const auto& row : rows) write_row(os, key.first, key.second, row, nullptr);

    std::optional<FitModel> model;
    if (key.first == "small_ball") model = FitModel::StretchedExp;
    if (key.first == "one_point") model = FitModel::Power;
    if (!model) continue;
    std::vector<std::pair<double, Estimate>> pts;
    for (const auto& row : rows) {
      if (row.param_name == "delta" && row.record->estimate) {
        pts.emplace_back(row.param_value, *row.record->estimate);
      }
    }
    try {
      const FitResult fit = fit_exponent(pts, *model);
      Row fit_row;
      fit_row.param_name = "fit";
      write_row(os, key.first, key.second, fit_row, &fit);
    } catch (const InsufficientData&) {
    }
  }
  return os.str();
}

std::string summarize_file(const std::string& records_path) {
  std::ifstream in(records_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + records_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + records_path);
  return summarize_records(parse_jsonl(buf.str()));
}

}  // namespace lpp::cli

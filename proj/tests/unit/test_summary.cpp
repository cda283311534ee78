#include <sstream>

#include "doctest.h"
#include "lpp/summary.hpp"

using namespace lpp;
using namespace lpp::cli;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> cells_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

ResultRecord ball(double delta, std::uint64_t hits, std::int64_t n = 100) {
  ResultRecord r;
  r.experiment = "small_ball";
  r.config = {{"experiment", "small_ball"}, {"n", n}, {"delta_list", {0.4, 0.6, 0.9}}, {"replicas", 1000}};
  r.point = {{"n", n}, {"delta", delta}};
  r.estimate = make_estimate(hits, 1000);
  r.artifact_version = "test";
  return r;
}

}  // namespace

TEST_SUITE("summary") {
  TEST_CASE("empty input gives the header only") {
    const auto lines = lines_of(summarize_records({}));
    REQUIRE(lines.size() == 1);
    CHECK(cells_of(lines[0]) == summary_columns());
  }

  TEST_CASE("a delta sweep gives one row per delta and a fit row") {
    const auto lines = lines_of(summarize_records({ball(0.9, 700), ball(0.4, 100), ball(0.6, 400)}));
    REQUIRE(lines.size() == 5);
    const auto cols = summary_columns();
    std::vector<double> deltas;
    for (int i = 1; i <= 3; ++i) {
      const auto c = cells_of(lines[static_cast<std::size_t>(i)]);
      REQUIRE(c.size() == cols.size());
      CHECK(c[0] == "small_ball");
      CHECK(c[2] == "delta");
      CHECK(c[5] == "1000");
      deltas.push_back(std::stod(c[3]));
    }
    CHECK(deltas == std::vector<double>{0.4, 0.6, 0.9});
    const auto fit = cells_of(lines[4]);
    REQUIRE(fit.size() == cols.size());
    CHECK(fit[2] == "fit");
    CHECK(fit[19] == "STRETCHED_EXP");
    CHECK(fit[23] == "3");
    CHECK(std::stod(fit[20]) < 0.0);
  }

  TEST_CASE("mixed experiments are grouped deterministically") {
    ResultRecord tw;
    tw.experiment = "tw_stat";
    tw.config = {{"experiment", "tw_stat"}, {"n", 50}, {"gamma", 1.0}, {"replicas", 10}};
    tw.point = {{"n", 50}, {"gamma", 1.0}};
    StatSummary s;
    s.count = 10;
    s.mean = -1.5;
    tw.summary = s;
    const std::vector<ResultRecord> a{tw, ball(0.4, 100, 200), ball(0.6, 300), ball(0.4, 100)};
    const std::vector<ResultRecord> b{ball(0.4, 100), ball(0.6, 300), tw, ball(0.4, 100, 200)};
    const std::string out = summarize_records(a);
    CHECK(out == summarize_records(b));
    const auto lines = lines_of(out);
    CHECK(cells_of(lines.back())[0] == "tw_stat");
    CHECK(cells_of(lines.back())[10] == "-1.5");
    std::size_t ball_rows = 0;
    for (const auto& l : lines) ball_rows += l.rfind("small_ball,", 0) == 0;
    CHECK(ball_rows == 4);  // 2 + fit for n = 100, 1 for n = 200
  }
}

#pragma once

#include <ostream>
#include <vector>

#include "lpp/config.hpp"
#include "lpp/records.hpp"

namespace lpp::cli {

struct RunResult {
  std::vector<ResultRecord> records;
  // Set only by oracle_check: whether every DP/enumeration comparison agreed.
  bool oracle_ok = true;
};

// Dispatches the configured experiment. `workers` = 0 defers to the config,
// then to machine parallelism. Record contents other than timestamp and
// wall_time_seconds depend only on the config.
RunResult run(const ExperimentConfig& config, unsigned workers = 0);

void write_jsonl(std::ostream& os, const std::vector<ResultRecord>& records);

}  // namespace lpp::cli

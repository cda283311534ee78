#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lpp/records.hpp"

namespace lpp::cli {

// Column order of the summary CSV. The plotting scripts depend on these names.
const std::vector<std::string>& summary_columns();

// One row per record, grouped by (experiment, non-sweep parameters) and
// sorted by the swept parameter. Each small_ball group gets a STRETCHED_EXP
// fit row and each one_point group a POWER fit row when at least two points
// are usable.
std::string summarize_records(const std::vector<ResultRecord>& records);

// Reads a JSONL file and returns the CSV. Throws IoError or SchemaError.
std::string summarize_file(const std::string& records_path);

}  // namespace lpp::cli

// lpplab: command line front end for the last-passage percolation experiments.
//
//   lpplab run <config.json> [--workers K] [--out PATH]
//   lpplab summarize <records.jsonl> [--out PATH]
//   lpplab oracle-check [--cases N] [--seed S]
//   lpplab version
//
// Exit codes: 0 success, 2 validation error, 3 runtime failure, 4 oracle disagreement.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lpp/config.hpp"
#include "lpp/errors.hpp"
#include "lpp/oracle.hpp"
#include "lpp/records.hpp"
#include "lpp/runner.hpp"
#include "lpp/summary.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitOracle = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lpp::IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lpp::IoError("cannot write " + path);
  out << text;
  if (!out) throw lpp::IoError("error writing " + path);
}

// --workers wins over LPP_WORKERS, which wins over the config file.
unsigned resolve_cli_workers(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("LPP_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw lpp::ValidationError("LPP_WORKERS", "must be a positive integer");
    }
    return static_cast<unsigned>(v);
  }
  return 0;
}

int cmd_run(const std::string& config_path, unsigned workers_flag, const std::string& out_flag) {
  const auto config = lpp::cli::parse_config(read_file(config_path));
  const auto result = lpp::cli::run(config, resolve_cli_workers(workers_flag));
  std::ostringstream os;
  lpp::cli::write_jsonl(os, result.records);
  const std::string out = !out_flag.empty() ? out_flag : config.output_path.value_or("");
  write_output(out, os.str());
  if (!result.oracle_ok) {
    std::cerr << "oracle_check: DP and enumeration disagree\n";
    return kExitOracle;
  }
  return kExitOk;
}

int cmd_oracle(std::uint64_t cases, std::uint64_t seed) {
  const auto rep = lpp::oracle::check_agreement(cases, seed);
  std::cout << "cases " << rep.cases << ", value mismatches " << rep.value_mismatches
            << ", path mismatches " << rep.path_mismatches << ", reachability mismatches "
            << rep.nopath_mismatches << ", unreachable cases " << rep.no_path_cases
            << ", max relative error " << rep.max_rel_error << '\n';
  std::cout << (rep.ok() ? "agreement: OK\n" : "agreement: FAILED\n");
  return rep.ok() ? kExitOk : kExitOracle;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential last-passage percolation laboratory"};
  app.require_subcommand(1);

  std::string config_path, run_out;
  unsigned run_workers = 0;
  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--workers", run_workers, "Worker threads (overrides LPP_WORKERS)")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", run_out, "Output JSONL path (default: config output_path or stdout)");

  std::string records_path, summary_out;
  auto* summarize = app.add_subcommand("summarize", "Summarise a JSONL record file as CSV");
  summarize->add_option("records", records_path, "Records (JSONL)")->required();
  summarize->add_option("--out", summary_out, "Output CSV path (default: stdout)");

  std::uint64_t cases = 200;
  std::uint64_t seed = 0;
  auto* oracle = app.add_subcommand("oracle-check", "Compare the DP against brute force");
  oracle->add_option("--cases", cases, "Number of random cases");
  oracle->add_option("--seed", seed, "Seed for case generation");

  auto* version = app.add_subcommand("version", "Print the artifact version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*run) return cmd_run(config_path, run_workers, run_out);
    if (*summarize) {
      write_output(summary_out, lpp::cli::summarize_file(records_path));
      return kExitOk;
    }
    if (*oracle) return cmd_oracle(cases, seed);
    if (*version) {
      std::cout << "lpplab " << lpp::cli::artifact_version() << " (record schema "
                << lpp::cli::kSchemaVersion << ")\n";
      return kExitOk;
    }
  } catch (const lpp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const lpp::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const lpp::InvalidParams& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const lpp::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

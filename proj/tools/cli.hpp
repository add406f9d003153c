#pragma once

// Command-line front end. Every subcommand is a thin composition of library
// calls; parsing and validation happen before any computation.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <bellopt/quantum_models.hpp>
#include <bellopt/sampling.hpp>
#include <bellopt/variance_optimizer.hpp>

namespace bellopt::cli {

enum class CovSource { analytic, mc };

struct CommandConfig {
  std::string subcommand;  // decompose, optimize, simulate, model, group-verify, catalog

  std::string input;   // distribution JSON
  std::string output;  // main artifact; standard output when empty

  // inequality selection: a JSON file or catalog names, not both
  std::vector<std::string> inequality_files;
  std::vector<std::string> catalog_names;

  std::int64_t trials = 1000;
  std::int64_t runs = 1000;
  std::uint64_t seed = 1;
  Allocation allocation = Allocation::fixed_equal;
  CovSource cov = CovSource::analytic;
  Estimator estimator = Estimator::frequency;
  int threads = 1;
  double tolerance = 1e-12;

  // simulate artifacts besides the summary in `output`
  std::string histogram;
  std::string raw;
  int bins = 50;

  // model
  std::string model;  // nv or spdc
  NvParameters nv;
  std::optional<MeasurementAngles> nv_angles;  // overrides the epsilon-derived angles
  SpdcParameters spdc;
};

// Thrown for malformed or conflicting flags.
struct UsageError {
  std::string message;
};

// Parses argv into a config. Returns std::nullopt after printing help.
std::optional<CommandConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

// Runs one subcommand. Human-readable text goes to `out`; artifacts go to
// the configured files (or to `out` when no file is given).
void run_command(const CommandConfig& cfg, std::ostream& out);

// parse + run; failures become a JSON error record on `err`. Returns the
// exit status: 0 success, 2 usage error, 3 I/O error, 4 schema error,
// 5 invalid parameters or numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bellopt::cli

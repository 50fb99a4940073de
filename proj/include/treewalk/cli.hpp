#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "treewalk/estimators.hpp"

namespace treewalk::cli {

enum class Command {
  Gen,
  Count,
  EstimateSize,
  EstimateAlpha,
  EstimateProb,
  Sample,
  Validate,
  Conductance,
  Mixing,
  Bench,
  Baseline,
  Knuth,
};

enum class Format { Json, Csv };

/// Process exit status contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitCapExceeded = 4,
  kExitGuaranteeViolation = 5,
};

struct RunConfig {
  Command command = Command::Count;
  std::string tree_descriptor;
  std::vector<int> order;  // cnf variable order; empty = identity
  std::uint64_t seed = 0;

  std::optional<double> xi;
  std::optional<double> zeta;
  double delta = 0.1;
  double tv_epsilon = 0.01;
  std::vector<double> mixing_eps{0.25};
  std::uint64_t m = 1;
  std::uint64_t runs = 1000;

  Format format = Format::Json;
  BurnInMode burn_in_mode = BurnInMode::Bound;
  double burn_in_constant = 2.0;
  double sample_constant = 4.0;

  std::uint64_t enum_cap = 1000000;
  std::uint64_t matrix_cap = 4096;
  std::uint64_t conductance_cap = 18;

  std::string trace_path;
  bool timing = false;
  bool list_nodes = false;

  // bench
  std::string family = "full";
  int n_min = 2;
  int n_max = 6;
  std::vector<std::string> estimators{"alpha", "size", "uniform", "knuth"};
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; carries the rendered help text.
struct HelpRequested {
  std::string text;
};

std::string command_name(Command c);

/// Parses arguments (without the program name). Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs a validated config, writing records to `out` and diagnostics to
/// `err`. Module errors propagate as exceptions.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute with every failure mapped onto an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treewalk::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fkg/functional.hpp"
#include "fkg/json_io.hpp"

namespace fkg::cli {

enum class Command { check_fkg, en, chain, lemma, series_identity, series_nonneg, search };

std::optional<Command> command_from_name(const std::string& name);
std::string command_name(Command c);

/// Exit statuses of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

struct RunConfig {
  Command command = Command::check_fkg;
  /// The check driven by `search`; ignored otherwise.
  Command check = Command::en;
  std::string input;
  std::uint64_t seed = 0;
  int trials = 100;
  int m = 3;
  int n = 3;
  int degree = kDefaultDegree;
  Mode mode = Mode::verify;
  int workers = 1;
  std::string output;
  bool timestamp = true;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Parses command-line arguments (without the program name). Throws
/// ConfigError with a one-line diagnostic; `help` is set when --help was given.
RunConfig parse_args(const std::vector<std::string>& args, std::string* help = nullptr);

/// Throws ConfigError when a limit is outside its module bound.
void validate(const RunConfig& config);

/// Executes the configured command and returns the JSON report. `status`
/// receives kExitOk or kExitViolation. Input problems throw Error.
io::Json execute(const RunConfig& config, int& status);

/// Full front-end: validate, execute, write the report to config.output
/// (or `out`), print diagnostics to `err`, return the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Entry point used by the fkgcheck executable.
int main_entry(int argc, char** argv);

}  // namespace fkg::cli

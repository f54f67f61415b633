#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tsirelson::cli {

enum ExitCode : int {
  kOk = 0,
  kCounterexample = 1,
  kParseError = 2,
  kCapExceeded = 3,
};

/// Parsed command line. Unset options fall back to per-command defaults when run.
struct RunConfig {
  std::string command;     // norm | verify | sweep
  std::string subcommand;  // verify claim or sweep kind
  std::optional<std::string> family;
  std::optional<std::string> theta;
  std::optional<std::string> vector;
  std::optional<std::string> format;  // json | csv | text
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> m_max;
  std::optional<std::size_t> max_supp;
  std::optional<std::size_t> subsets;
  std::optional<std::size_t> max_support;
  std::optional<std::string> theta_grid;
  bool exact = false;
  bool check = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ParseError on unknown commands, options or values.
RunConfig parse_run_config(const std::vector<std::string>& args);
/// Arguments that parse back to the same config.
std::vector<std::string> format_run_config(const RunConfig& config);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests; args exclude argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsirelson::cli

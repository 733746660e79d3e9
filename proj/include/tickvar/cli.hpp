#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace tickvar {

inline constexpr const char* kToolName = "tickvar";
const char* version();

enum class OutputFormat { Json, Csv };

/// Effective configuration of one CLI invocation.
struct RunConfig {
  std::string subcommand;  // analyze | dist | simulate | fattails | indicator
  std::optional<std::string> input_path;   // tick CSV; standard input when empty
  std::optional<std::string> output_path;  // standard output when empty
  std::optional<std::string> summary_path; // fattails: JSON summary next to CSV output
  std::uint64_t seed = 0;
  std::optional<OutputFormat> format;      // per-subcommand default when empty

  std::int64_t n = 10;
  double alpha = 0.0;
  double epsilon_rho = 0.25;
  std::size_t window = 200;
  std::size_t samples = 100'000;
  std::size_t bins = 60;
  bool strict = false;

  OutputFormat effective_format() const;
  nlohmann::ordered_json to_json() const;
};

/// JSON text with every floating-point number printed to 17 significant
/// digits; non-finite numbers become null. Two-space indentation.
std::string dump_json(const nlohmann::ordered_json& value);

/// Formats a double with 17 significant digits ("%.17g").
std::string format_number(double value);

/// Runs one subcommand. Reports go to the configured output file or `out`;
/// diagnostics go to `err`. Returns 0 on success, 1 on input errors and 2
/// on domain errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Report bodies, exposed for tests and bindings. Each throws InputError or
/// DomainError like the subcommand.
std::string run_to_string(const RunConfig& config);

}  // namespace tickvar

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "octic/rational.hpp"

namespace octic {

// Command-line level misuse; the CLI maps it to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint32_t p = 7;
  std::optional<std::string> t;  // rational string; defaults to p
  std::vector<int> ext_degrees{1};
  unsigned jobs = 1;
  std::string cache;
  std::string report;
  bool timing = true;
  bool allow_large = false;
  std::string arrangement = "builtin";  // or a file path

  // UsageError on p <= 5 or not prime, k outside 1..3 without allow_large,
  // jobs == 0 or an unparsable t.
  void validate() const;
  Rational t_value() const;
  nlohmann::json echo() const;
};

struct CheckRecord {
  std::string id;
  std::string anchor;
  std::string status;  // "pass" | "fail" | "skipped"
  nlohmann::json data = nlohmann::json::object();
  double seconds = 0;
};

struct VerificationReport {
  std::string version;
  nlohmann::json config = nlohmann::json::object();
  std::vector<CheckRecord> checks;
  bool timing = true;

  bool passed() const;  // no check failed
  std::string overall() const { return passed() ? "pass" : "fail"; }
  // Sorted keys, two-space indent, trailing newline. Elapsed times are only
  // written when timing is on.
  std::string to_json() const;
};

inline constexpr const char* kVersion = "1.0.0";

const std::vector<std::string>& subcommands();

// Runs the checks of one subcommand ("verify-all" runs every group).
VerificationReport run(const std::string& subcommand, const RunConfig& config);

// Writes to_json() to path; DataError naming the path on I/O failure.
void emit_report(const VerificationReport& report, const std::string& path);

}  // namespace octic

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "brwa/cli/config.hpp"

namespace brwa::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Environment variable that overrides output.directory (but not --out).
inline constexpr const char* kOutDirEnv = "BRWA_OUT_DIR";

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kConfigError = 2 };

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct OutputFile {
  std::string file;
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunRecord {
  RunConfig config;
  std::filesystem::path directory;
  nlohmann::ordered_json derived = nlohmann::ordered_json::array();
  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();
  nlohmann::ordered_json reports = nlohmann::ordered_json::object();
  std::vector<CheckResult> checks;
  std::vector<OutputFile> outputs;
  std::string started;
  std::string finished;
  bool partial = false;
  std::string error;
  int exit_code = kSuccess;

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// --out beats BRWA_OUT_DIR beats output.directory; "brwa-out" otherwise.
[[nodiscard]] std::filesystem::path resolve_output_directory(const RunConfig& config,
                                                             const std::string& cli_out);

/// Executes the command, writes data files and record.json into
/// `directory`, and sets exit_code. Guard and parameter errors end the run
/// with kConfigError and a partial record.
[[nodiscard]] RunRecord run(const RunConfig& config, const std::filesystem::path& directory);

}  // namespace brwa::cli

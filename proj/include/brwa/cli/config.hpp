#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "brwa/model.hpp"
#include "brwa/multimode.hpp"

namespace brwa::cli {

/// Bad or unreadable configuration. The message names the field (or the
/// line and column for syntax errors).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Command { verify_algebra, evolve, chain_check, sweep, multimode, thermo };

[[nodiscard]] Command command_from_name(const std::string& name);
[[nodiscard]] std::string command_name(Command c);

struct TimeGrid {
  double t_min = 0.0;
  double t_max = 0.0;
  int steps = 1;  // number of samples, endpoints included

  [[nodiscard]] std::vector<double> samples() const;
};

struct Tolerances {
  double oracle = 1e-8;     // oracle vs closed form
  double identity = 1e-10;  // exact-arithmetic identities
  double guard = 1e-10;     // squeeze guard: max tanh(|Gamma t|)^{N/2}
};

struct SweepGrid {
  std::vector<double> g;
  std::vector<double> omega_a;
  std::vector<double> omega_b;
  int threads = 0;  // 0: hardware concurrency
};

struct LabeledMode {
  std::string label;
  ModeParams params;
};

struct OutputSpec {
  std::string directory;
  bool csv = true;
  bool json = false;
};

struct RunConfig {
  Command command = Command::evolve;
  int cutoff = 64;
  std::optional<ModeParams> mode;
  std::optional<double> gamma;
  std::optional<double> energy;
  TimeGrid time;
  double dt = 1e-4;
  std::optional<int> interior;
  Tolerances tolerances;
  double chain_t = 2.0;
  SweepGrid sweep;
  std::vector<LabeledMode> modes;
  std::optional<DispersionSpec> dispersion;
  OutputSpec output;
  nlohmann::ordered_json snapshot;  // the parsed file, as read
};

/// Parses and validates `text` for `command`.
[[nodiscard]] RunConfig parse_config(const std::string& text, Command command);

/// Reads `path` and calls parse_config.
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path, Command command);

}  // namespace brwa::cli

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "brwa/cli/config.hpp"
#include "brwa/cli/run.hpp"

int main(int argc, char** argv) {
  using namespace brwa::cli;

  CLI::App app{"Two coupled bosonic modes beyond the rotating-wave approximation"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  const char* commands[][2] = {
      {"verify-algebra", "Check every generator commutator and Casimir relation"},
      {"evolve", "Evolve the vacuum and compare with the closed forms"},
      {"chain-check", "Verify the interaction-frame chain down to <0|0(t)>"},
      {"sweep", "Derived parameters and oracle checks over a parameter grid"},
      {"multimode", "Survival and entropy over mode sets and dispersions"},
      {"thermo", "Free energy, stationary beta and heat balance along the trajectory"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Configuration file (JSON)")->required();
    sub->add_option("--out", out_dir, "Output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigError;
  }

  const Command command = command_from_name(app.get_subcommands().front()->get_name());
  RunConfig config;
  try {
    config = load_config(config_path, command);
  } catch (const ConfigError& e) {
    std::cerr << "brwa: " << e.what() << "\n";
    return kConfigError;
  }

  const auto directory = resolve_output_directory(config, out_dir);
  RunRecord record;
  try {
    record = run(config, directory);
  } catch (const std::exception& e) {
    std::cerr << "brwa: " << e.what() << "\n";
    return kConfigError;
  }

  if (!record.error.empty()) std::cerr << "brwa: " << record.error << "\n";
  for (const auto& c : record.checks) {
    if (!c.passed) {
      std::cerr << "check failed: " << c.name << " (" << c.value << " > " << c.tolerance << ")\n";
    }
  }
  std::cout << command_name(command) << ": ";
  if (record.partial) {
    std::cout << "aborted";
  } else {
    std::cout << record.checks.size() << " checks, "
              << (record.all_passed() ? "all passed" : "failures");
  }
  std::cout << "; outputs in " << directory.string() << "\n";
  return record.exit_code;
}

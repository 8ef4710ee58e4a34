#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"calr-lab: anomalous localized resonance in confocal elliptic shells"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  int threads = 0;
  for (const char* name : {"spectrum", "critical-radius", "sweep", "field", "validate"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON configuration file")->required();
    sub->add_option("--out", out, "output directory (default: output.dir from the config, else .)");
    sub->add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : calr::lab::kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::optional<std::filesystem::path> out_dir;
  if (!out.empty()) out_dir = out;
  return calr::lab::run_command(command, config, out_dir ? &*out_dir : nullptr, threads, std::cout, std::cerr);
}

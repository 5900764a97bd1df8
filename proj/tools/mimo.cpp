// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "mimo/cli/commands.hpp"
#include "mimo/cli/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"MIMO sampling and FFT reconstruction of periodic band-limited signals"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string mode;
  app.add_option("--config", config_path, "Experiment config file")->required();
  app.add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  app.add_option("--seed", seed, "Noise seed (overrides [noise] seed)");
  app.add_option("--mode", mode, "Left inverse: pseudoinverse or explicit")
      ->check(CLI::IsMember({"pseudoinverse", "explicit"}));

  app.add_subcommand("plan", "Print the sampling plan and write plan.csv");
  app.add_subcommand("reconstruct", "Sample, reconstruct and report errors");
  app.add_subcommand("consistency", "Resample the reconstruction and compare");
  app.add_subcommand("error-sweep", "Actual MSE, averaged MSE and bound versus L");
  app.add_subcommand("noise", "Reconstruction error from noisy samples");

  CLI11_PARSE(app, argc, argv);

  mimo::cli::ExperimentConfig config;
  try {
    config = mimo::cli::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mimo::cli::exit_code_for(e);
  }
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (seed) config.seed = *seed;
  if (mode == "pseudoinverse") config.mode = mimo::InverseSource::Pseudoinverse;
  if (mode == "explicit") config.mode = mimo::InverseSource::Explicit;

  const std::string command = app.get_subcommands().front()->get_name();
  return mimo::cli::run_command(command, config, std::cout, std::cerr);
}

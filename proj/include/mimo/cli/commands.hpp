// SPDX-License-Identifier: Apache-2.0
//
// Experiment runners behind the `mimo` subcommands. Each writes its CSV files
// into config.output_dir and a short human-readable summary to `out`.
//
//   plan          plan.csv
//   reconstruct   samples.csv, recon_<r>.csv, spectra.csv, errors.csv
//   consistency   consistency.csv
//   error-sweep   error_sweep.csv          (centered band per L)
//   noise         noise.csv, noise_fit.csv (fit only for sigma sweeps)

#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include "mimo/analysis.hpp"
#include "mimo/cli/config.hpp"
#include "mimo/plan.hpp"
#include "mimo/reconstruct.hpp"
#include "mimo/system.hpp"

namespace mimo::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitSingular = 3,
  kExitCapacity = 4,
};

/// Maps a caught exception to the process exit code.
int exit_code_for(const std::exception& e);

/// Output and input counts of the configured scheme.
std::pair<int, int> scheme_shape(const ExperimentConfig& config);

SamplingPlan resolve_plan(const ExperimentConfig& config);

/// The configured system; translation presets use alpha or 2 pi 0.37 / L.
MimoSystem resolve_system(const ExperimentConfig& config, int L);

Reconstructor resolve_reconstructor(const ExperimentConfig& config, const MimoSystem& sys,
                                    const SamplingPlan& plan);

struct ResolvedInputs {
  std::vector<AnalyticSignal> signals;
  int K = 0;  // truncation used for every infinite sum
};

/// Inputs with a truncation covering at least `band_half_width`.
ResolvedInputs resolve_inputs(const ExperimentConfig& config, int band_half_width);

int cmd_plan(const ExperimentConfig& config, std::ostream& out);
int cmd_reconstruct(const ExperimentConfig& config, std::ostream& out);
int cmd_consistency(const ExperimentConfig& config, std::ostream& out);
int cmd_error_sweep(const ExperimentConfig& config, std::ostream& out);
int cmd_noise(const ExperimentConfig& config, std::ostream& out);

/// Dispatches by subcommand name, reporting errors on `err` and returning
/// the exit code.
int run_command(const std::string& name, const ExperimentConfig& config, std::ostream& out,
                std::ostream& err);

}  // namespace mimo::cli

// SPDX-License-Identifier: Apache-2.0
#include "mimo/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "mimo/cli/csv.hpp"
#include "mimo/cli/presets.hpp"
#include "mimo/errors.hpp"
#include "mimo/test_signals.hpp"

namespace mimo::cli {
namespace {

int half_width(const SamplingPlan& plan) { return std::max(std::abs(plan.N1), std::abs(plan.N2)); }

std::vector<SpectrumSignal> truncated(const ResolvedInputs& in) {
  std::vector<SpectrumSignal> out;
  for (const auto& x : in.signals) out.push_back(dirichlet_bandlimit(x, in.K));
  return out;
}

std::vector<std::uint64_t> seed_list(const ExperimentConfig& c) {
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < c.realizations; ++i) seeds.push_back(c.seed + static_cast<std::uint64_t>(i));
  return seeds;
}

std::vector<int> output_counts(const ExperimentConfig& c, const SamplingPlan& plan) {
  if (c.output_counts.empty()) return std::vector<int>(plan.R, 8 * plan.m0 * plan.L);
  if (c.output_counts.size() != static_cast<std::size_t>(plan.R)) {
    throw ConfigError("[reconstruct] output_counts needs " + std::to_string(plan.R) + " entries");
  }
  return c.output_counts;
}

void check_bandwidth(const std::vector<SpectrumSignal>& spectra, const SamplingPlan& plan) {
  if (plan.mu() != plan.m0 * plan.L) throw Error("band width differs from m0 * L");
  for (const auto& s : spectra) {
    if (!s.empty() && (s.min_index() < plan.N1 || s.max_index() > plan.N2)) {
      throw Error("reconstructed spectrum escapes [N1, N2]");
    }
  }
}

void print_plan(const SamplingPlan& p, std::ostream& out) {
  out << "M = " << p.M << ", R = " << p.R << ", m0 = " << p.m0 << ", L = " << p.L << "\n"
      << "band [" << p.N1 << ", " << p.N2 << "]";
  if (p.N2 != p.requested_N2) out << " (extended from N2 = " << p.requested_N2 << ")";
  out << ", bandwidth " << p.mu() << "\n"
      << "total samples " << p.total_samples() << "\n";
}

// One centered plan per L, for sweeps whose band grows with L.
SamplingPlan sweep_plan(const ExperimentConfig& c, int L) {
  const auto [M, R] = scheme_shape(c);
  return make_centered_plan(M, R, L);
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SingularSystemError*>(&e)) return kExitSingular;
  if (dynamic_cast<const CapacityError*>(&e)) return kExitCapacity;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidInverseError*>(&e) ||
      dynamic_cast<const OutOfBandError*>(&e)) {
    return kExitConfig;
  }
  return kExitFailure;
}

std::pair<int, int> scheme_shape(const ExperimentConfig& c) {
  if (c.scheme == "custom") return {c.M, c.R};
  return {example_outputs(example_of(c.scheme)), 2};
}

SamplingPlan resolve_plan(const ExperimentConfig& c) {
  const auto [M, R] = scheme_shape(c);
  return make_plan(M, R, c.N1, c.N2, c.L_override);
}

MimoSystem resolve_system(const ExperimentConfig& c, int L) {
  if (c.scheme == "custom") {
    std::vector<ChannelResponse> grid;
    for (const auto& text : c.responses) grid.push_back(parse_response(text));
    return MimoSystem(c.M, c.R, std::move(grid));
  }
  return example_system(example_of(c.scheme), c.alpha.value_or(default_alpha(L)));
}

Reconstructor resolve_reconstructor(const ExperimentConfig& c, const MimoSystem& sys,
                                    const SamplingPlan& plan) {
  const auto B = build_B(sys, plan);
  if (c.mode == InverseSource::Pseudoinverse) return left_inverse(B);
  if (c.scheme == "custom") {
    throw ConfigError("[reconstruct] mode = explicit needs a preset scheme");
  }
  const double alpha = c.alpha.value_or(default_alpha(plan.L));
  return left_inverse(B, example_inverse(example_of(c.scheme), alpha, plan.L));
}

ResolvedInputs resolve_inputs(const ExperimentConfig& c, int band_half_width) {
  ResolvedInputs in;
  if (c.signals == "hardy") {
    const auto pair = signals::hardy_pair();
    in.signals.assign(pair.begin(), pair.end());
    in.K = c.truncation.value_or(std::min(pair[0].max_index(), pair[1].max_index()));
    return in;
  }
  std::vector<SpectrumSignal> spectra;
  if (c.signals == "bl51") {
    const auto pair = signals::bandlimited_pair();
    spectra.assign(pair.begin(), pair.end());
  } else {
    spectra = c.custom_inputs;
  }
  int width = band_half_width;
  for (const auto& s : spectra) width = std::max(width, s.half_width());
  in.K = c.truncation.value_or(width);
  for (auto& s : spectra) in.signals.push_back(AnalyticSignal::from_spectrum(std::move(s), in.K));
  return in;
}

int cmd_plan(const ExperimentConfig& c, std::ostream& out) {
  const auto plan = resolve_plan(c);
  print_plan(plan, out);
  CsvWriter csv({"M", "R", "m0", "L", "N1", "N2", "requested_N2", "mu", "total_samples"});
  csv << plan.M << plan.R << plan.m0 << plan.L << plan.N1 << plan.N2 << plan.requested_N2
      << plan.mu() << plan.total_samples();
  csv.end_row();
  csv.write(c.output_dir / "plan.csv");
  return kExitOk;
}

int cmd_reconstruct(const ExperimentConfig& c, std::ostream& out) {
  const auto plan = resolve_plan(c);
  const auto sys = resolve_system(c, plan.L);
  const auto rec = resolve_reconstructor(c, sys, plan);
  const auto inputs = resolve_inputs(c, half_width(plan));
  if (inputs.signals.size() != static_cast<std::size_t>(plan.R)) {
    throw ConfigError("[signals] scheme needs " + std::to_string(plan.R) + " inputs");
  }
  print_plan(plan, out);

  const auto samples = sample_outputs(sys, inputs.signals, plan, inputs.K).grid;
  const auto t = grid_instants(plan);
  CsvWriter sc({"m", "p", "t_p", "re", "im"});
  for (int m = 0; m < plan.M; ++m) {
    for (int p = 0; p < plan.L; ++p) {
      sc << m + 1 << p << t[p] << samples(m, p);
      sc.end_row();
    }
  }
  sc.write(c.output_dir / "samples.csv");

  const auto counts = output_counts(c, plan);
  const auto grids = fft_reconstruct(samples, rec, {counts});
  for (int r = 0; r < plan.R; ++r) {
    CsvWriter rc({"q", "t_q", "re", "im"});
    for (int q = 0; q < counts[r]; ++q) {
      rc << q << kTwoPi * q / counts[r] << grids[r][q];
      rc.end_row();
    }
    rc.write(c.output_dir / ("recon_" + std::to_string(r + 1) + ".csv"));
  }

  const auto spectra = reconstruct_spectra(samples, rec);
  check_bandwidth(spectra, plan);
  CsvWriter spc({"r", "n", "re", "im"});
  for (int r = 0; r < plan.R; ++r) {
    for (int n = plan.N1; n <= plan.N2; ++n) {
      spc << r + 1 << n << spectra[r][n];
      spc.end_row();
    }
  }
  spc.write(c.output_dir / "spectra.csv");

  const auto report = error_report(inputs.signals, sys, rec, inputs.K);
  CsvWriter ec({"r", "xi", "eps", "bound"});
  for (int r = 0; r < plan.R; ++r) {
    ec << r + 1 << report[r].actual_mse << report[r].averaged_mse << report[r].upper_bound;
    ec.end_row();
    out << "x" << r + 1 << ": xi = " << format_real(report[r].actual_mse)
        << ", eps = " << format_real(report[r].averaged_mse)
        << ", bound = " << format_real(report[r].upper_bound) << "\n";
  }
  ec.write(c.output_dir / "errors.csv");
  return kExitOk;
}

int cmd_consistency(const ExperimentConfig& c, std::ostream& out) {
  const auto plan = resolve_plan(c);
  const auto sys = resolve_system(c, plan.L);
  const auto rec = resolve_reconstructor(c, sys, plan);
  const auto inputs = resolve_inputs(c, half_width(plan));
  const auto samples = sample_outputs(sys, inputs.signals, plan, inputs.K).grid;
  const auto result = consistency_test(sys, rec, samples);
  const auto t = grid_instants(plan);

  CsvWriter csv({"m", "p", "t_p", "orig_re", "orig_im", "resampled_re", "resampled_im",
                 "abs_diff"});
  for (int m = 0; m < plan.M; ++m) {
    for (int p = 0; p < plan.L; ++p) {
      csv << m + 1 << p << t[p] << samples(m, p) << result.resampled(m, p)
          << std::abs(result.resampled(m, p) - samples(m, p));
      csv.end_row();
    }
  }
  csv.write(c.output_dir / "consistency.csv");
  print_plan(plan, out);
  out << "max deviation " << format_real(result.max_deviation) << "\n";
  return kExitOk;
}

int cmd_error_sweep(const ExperimentConfig& c, std::ostream& out) {
  if (c.L_list.empty()) throw ConfigError("[sweep] L_list is empty");
  int widest = 0;
  for (int L : c.L_list) widest = std::max(widest, half_width(sweep_plan(c, L)));
  const auto inputs = resolve_inputs(c, widest);

  CsvWriter csv({"L", "r", "xi", "eps", "bound"});
  for (int L : c.L_list) {
    const auto plan = sweep_plan(c, L);
    const auto sys = resolve_system(c, L);
    const auto rec = resolve_reconstructor(c, sys, plan);
    const auto report = error_report(inputs.signals, sys, rec, inputs.K);
    for (int r = 0; r < plan.R; ++r) {
      csv << L << r + 1 << report[r].actual_mse << report[r].averaged_mse << report[r].upper_bound;
      csv.end_row();
    }
    out << "L = " << L << " done\n";
  }
  csv.write(c.output_dir / "error_sweep.csv");
  return kExitOk;
}

int cmd_noise(const ExperimentConfig& c, std::ostream& out) {
  if (!c.sigma && c.sigma_list.empty()) throw ConfigError("[noise] needs sigma or sigma_list");
  const auto seeds = seed_list(c);
  CsvWriter csv({"variable", "value", "r", "xi_tilde"});

  if (!c.sigma_list.empty()) {
    const auto plan = resolve_plan(c);
    const auto sys = resolve_system(c, plan.L);
    const auto rec = resolve_reconstructor(c, sys, plan);
    const auto inputs = truncated(resolve_inputs(c, half_width(plan)));
    std::vector<std::vector<double>> ys(static_cast<std::size_t>(plan.R));
    for (double sigma : c.sigma_list) {
      const auto rms = noisy_error_rms(sys, inputs, rec, sigma, seeds, c.postfilter);
      for (int r = 0; r < plan.R; ++r) {
        csv << std::string("sigma") << sigma << r + 1 << rms[r];
        csv.end_row();
        ys[r].push_back(rms[r]);
      }
    }
    csv.write(c.output_dir / "noise.csv");
    CsvWriter fit_csv({"r", "slope", "intercept", "r_squared"});
    for (int r = 0; r < plan.R; ++r) {
      const auto fit = fit_line(c.sigma_list, ys[r]);
      fit_csv << r + 1 << fit.slope << fit.intercept << fit.r_squared;
      fit_csv.end_row();
      out << "x" << r + 1 << ": slope " << format_real(fit.slope) << ", intercept "
          << format_real(fit.intercept) << ", R^2 " << format_real(fit.r_squared) << "\n";
    }
    fit_csv.write(c.output_dir / "noise_fit.csv");
    return kExitOk;
  }

  std::vector<int> Ls = c.L_list;
  const bool sweep = !Ls.empty();
  if (!sweep) Ls.push_back(resolve_plan(c).L);
  for (int L : Ls) {
    const auto plan = sweep ? sweep_plan(c, L) : resolve_plan(c);
    const auto sys = resolve_system(c, plan.L);
    const auto rec = resolve_reconstructor(c, sys, plan);
    const auto inputs = truncated(resolve_inputs(c, half_width(plan)));
    const auto rms = noisy_error_rms(sys, inputs, rec, *c.sigma, seeds, c.postfilter);
    for (int r = 0; r < plan.R; ++r) {
      csv << std::string("L") << static_cast<double>(plan.L) << r + 1 << rms[r];
      csv.end_row();
      out << "L = " << plan.L << ", x" << r + 1 << ": xi~ = " << format_real(rms[r]) << "\n";
    }
  }
  csv.write(c.output_dir / "noise.csv");
  return kExitOk;
}

int run_command(const std::string& name, const ExperimentConfig& config, std::ostream& out,
                std::ostream& err) {
  try {
    if (name == "plan") return cmd_plan(config, out);
    if (name == "reconstruct") return cmd_reconstruct(config, out);
    if (name == "consistency") return cmd_consistency(config, out);
    if (name == "error-sweep") return cmd_error_sweep(config, out);
    if (name == "noise") return cmd_noise(config, out);
    err << "error: unknown command '" << name << "'\n";
    return kExitConfig;
  } catch (const SingularSystemError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSingular;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace mimo::cli

// SPDX-License-Identifier: Apache-2.0
#include "mimo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mimo/errors.hpp"

namespace mimo {
namespace {

void check_capacity(std::span<const AnalyticSignal> inputs, const SamplingPlan& plan, int K,
                    const char* who) {
  const int band = std::max(std::abs(plan.N1), std::abs(plan.N2));
  if (K < band) {
    throw CapacityError(std::string(who) + ": truncation K=" + std::to_string(K) +
                        " does not cover the band half-width " + std::to_string(band));
  }
  for (const auto& x : inputs) {
    if (K > x.max_index()) {
      throw CapacityError(std::string(who) + ": truncation K=" + std::to_string(K) +
                          " exceeds input max_index " + std::to_string(x.max_index()));
    }
  }
  if (inputs.size() != static_cast<std::size_t>(plan.R)) {
    throw ConfigError(std::string(who) + ": expected " + std::to_string(plan.R) + " inputs");
  }
}

// Rows: outputs m. Columns: n + K. Entry: sum_j a_j(n) b_mj(n).
Eigen::MatrixXcd output_coefficients(std::span<const AnalyticSignal> inputs,
                                     const MimoSystem& sys, int K) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(sys.M(), 2 * K + 1);
  for (int n = -K; n <= K; ++n) {
    for (int j = 0; j < sys.R(); ++j) {
      const Complex a = inputs[j].coefficient(n);
      if (a == Complex{}) continue;
      for (int m = 0; m < sys.M(); ++m) c(m, n + K) += a * sys.b(m, j, n);
    }
  }
  return c;
}

// Bound on sum_{K < |n| <= max_index} sum_m sum_j |a_j(n) b_mj(n)|^2 from the
// declared decay; coefficients beyond max_index are zero by contract.
double aliased_tail_bound(std::span<const AnalyticSignal> inputs, const MimoSystem& sys, int K) {
  int top = K;
  for (const auto& x : inputs) top = std::max(top, x.max_index());
  double sum = 0.0;
  for (int k = K + 1; k <= top; ++k) {
    for (int n : {k, -k}) {
      for (int j = 0; j < sys.R(); ++j) {
        if (k > inputs[j].max_index()) continue;
        const double a = inputs[j].coefficient_bound(n);
        if (a == 0.0) continue;
        for (int m = 0; m < sys.M(); ++m) sum += std::pow(a * std::abs(sys.b(m, j, n)), 2);
      }
    }
  }
  return sum;
}

}  // namespace

ConsistencyResult consistency_test(const MimoSystem& sys, const Reconstructor& rec,
                                   const SampleGrid& samples) {
  const auto xhat = reconstruct_spectra(samples, rec);
  ConsistencyResult out;
  out.resampled = sample_outputs(sys, xhat, rec.plan());
  out.max_deviation = (out.resampled - samples).cwiseAbs().maxCoeff();
  return out;
}

AveragedMse averaged_mse_exact(std::span<const AnalyticSignal> inputs, const MimoSystem& sys,
                               const Reconstructor& rec, int K) {
  const auto& plan = rec.plan();
  check_capacity(inputs, plan, K, "averaged_mse_exact");
  const Eigen::MatrixXcd c = output_coefficients(inputs, sys, K);
  const double alias_tail = aliased_tail_bound(inputs, sys, K);
  const double beta_max = rec.beta_max();

  AveragedMse out;
  for (int r = 0; r < plan.R; ++r) {
    double oob = 0.0;
    double alias = 0.0;
    for (int n = -K; n <= K; ++n) {
      if (plan.in_band(n)) continue;
      oob += std::norm(inputs[r].coefficient(n));
      // n lies in J_k for the m0 shifts k that carry n - kL back into the band.
      const int l = zblock_of(plan, n);
      for (int k = l - plan.m0; k <= l - 1; ++k) {
        if (k == 0) continue;
        Complex v{};
        for (int m = 0; m < plan.M; ++m) v += c(m, n + K) * rec.beta(r, m, n - k * plan.L);
        alias += std::norm(v);
      }
    }
    const double tail = inputs[r].tail_energy_bound(K) + plan.m0 * beta_max * beta_max * alias_tail;
    out.eps.push_back(std::sqrt(oob + alias));
    out.out_of_band_energy.push_back(oob);
    out.tail_energy.push_back(tail);
  }
  return out;
}

std::vector<double> averaged_mse_quadrature(std::span<const SpectrumSignal> inputs,
                                            const MimoSystem& sys, const Reconstructor& rec,
                                            int tau_nodes, int t_nodes) {
  const auto& plan = rec.plan();
  if (inputs.size() != static_cast<std::size_t>(plan.R)) {
    throw ConfigError("averaged_mse_quadrature: expected " + std::to_string(plan.R) + " inputs");
  }
  if (tau_nodes < 1) throw ConfigError("averaged_mse_quadrature: tau_nodes must be positive");
  int degree = std::max(std::abs(plan.N1), std::abs(plan.N2));
  for (const auto& x : inputs) degree = std::max(degree, x.half_width());
  if (t_nodes == 0) t_nodes = std::max(1024, 8 * degree);
  if (t_nodes < 4 * degree) {
    throw CapacityError("averaged_mse_quadrature: " + std::to_string(t_nodes) +
                        " t-nodes cannot resolve degree " + std::to_string(degree));
  }

  const ReconstructionRequest req{std::vector<int>(static_cast<std::size_t>(plan.R), t_nodes)};
  std::vector<double> acc(static_cast<std::size_t>(plan.R), 0.0);
  std::vector<SpectrumSignal> shifted(inputs.size());
  for (int i = 0; i < tau_nodes; ++i) {
    const double tau = kTwoPi * i / (static_cast<double>(plan.L) * tau_nodes);
    for (std::size_t r = 0; r < inputs.size(); ++r) shifted[r] = translate(inputs[r], tau);
    const auto grids = fft_reconstruct(sample_outputs(sys, shifted, plan), rec, req);
    for (int r = 0; r < plan.R; ++r) {
      const auto truth = eval_uniform(shifted[r], static_cast<std::size_t>(t_nodes));
      double sq = 0.0;
      for (int q = 0; q < t_nodes; ++q) sq += std::norm(truth[q] - grids[r][q]);
      acc[r] += sq / t_nodes;
    }
  }
  for (auto& v : acc) v = std::sqrt(v / tau_nodes);
  return acc;
}

ActualMse actual_mse(std::span<const SpectrumSignal> inputs,
                     std::span<const SpectrumSignal> reconstructed) {
  if (inputs.size() != reconstructed.size()) {
    throw ConfigError("actual_mse: " + std::to_string(inputs.size()) + " inputs vs " +
                      std::to_string(reconstructed.size()) + " reconstructions");
  }
  ActualMse out{{}, MseMethod::Parseval};
  for (std::size_t r = 0; r < inputs.size(); ++r) {
    out.xi.push_back(energy_distance(inputs[r], reconstructed[r]));
  }
  return out;
}

ActualMse actual_mse(std::span<const AnalyticSignal> inputs,
                     std::span<const std::vector<Complex>> grids) {
  if (inputs.size() != grids.size()) {
    throw ConfigError("actual_mse: " + std::to_string(inputs.size()) + " inputs vs " +
                      std::to_string(grids.size()) + " grids");
  }
  ActualMse out{{}, MseMethod::GridQuadrature};
  for (std::size_t r = 0; r < inputs.size(); ++r) {
    const auto& g = grids[r];
    if (g.empty()) throw ConfigError("actual_mse: empty reconstruction grid");
    double sq = 0.0;
    for (std::size_t q = 0; q < g.size(); ++q) {
      const double t = kTwoPi * static_cast<double>(q) / static_cast<double>(g.size());
      sq += std::norm(inputs[r].time_eval(t) - g[q]);
    }
    out.xi.push_back(std::sqrt(sq / static_cast<double>(g.size())));
  }
  return out;
}

MseBound mse_upper_bound(std::span<const AnalyticSignal> inputs, const MimoSystem& sys,
                         const Reconstructor& rec, int K) {
  const auto& plan = rec.plan();
  check_capacity(inputs, plan, K, "mse_upper_bound");
  double aliased = aliased_tail_bound(inputs, sys, K);
  for (int n = -K; n <= K; ++n) {
    if (plan.in_band(n)) continue;
    for (int j = 0; j < sys.R(); ++j) {
      const Complex a = inputs[j].coefficient(n);
      if (a == Complex{}) continue;
      for (int m = 0; m < sys.M(); ++m) aliased += std::norm(a * sys.b(m, j, n));
    }
  }
  MseBound out;
  out.beta_max = rec.beta_max();
  for (int r = 0; r < plan.R; ++r) {
    double oob = inputs[r].tail_energy_bound(K);
    for (int n = -K; n <= K; ++n) {
      if (!plan.in_band(n)) oob += std::norm(inputs[r].coefficient(n));
    }
    out.bound.push_back(std::sqrt(oob + plan.m0 * out.beta_max * out.beta_max * aliased));
  }
  return out;
}

std::vector<ErrorReport> error_report(std::span<const AnalyticSignal> inputs,
                                      const MimoSystem& sys, const Reconstructor& rec, int K) {
  const auto& plan = rec.plan();
  check_capacity(inputs, plan, K, "error_report");
  std::vector<SpectrumSignal> truncated;
  for (const auto& x : inputs) truncated.push_back(dirichlet_bandlimit(x, K));
  const auto xhat = reconstruct_spectra(sample_outputs(sys, truncated, plan), rec);
  for (const auto& s : xhat) {
    if (!s.empty() && (s.min_index() < plan.N1 || s.max_index() > plan.N2)) {
      throw Error("error_report: reconstruction escaped the band");
    }
  }
  const auto xi = actual_mse(truncated, xhat).xi;
  const auto eps = averaged_mse_exact(inputs, sys, rec, K);
  const auto bound = mse_upper_bound(inputs, sys, rec, K);

  std::vector<ErrorReport> out;
  for (int r = 0; r < plan.R; ++r) {
    ErrorReport e;
    e.actual_mse = xi[r];
    e.averaged_mse = eps.eps[r];
    e.upper_bound = bound.bound[r];
    e.beta_max = bound.beta_max;
    e.out_of_band_energy = eps.out_of_band_energy[r];
    out.push_back(e);
  }
  return out;
}

SampleGrid add_noise(const SampleGrid& samples, const NoiseModel& noise) {
  if (noise.sigma < 0.0) throw ConfigError("add_noise: negative sigma");
  SampleGrid out = samples;
  if (noise.sigma == 0.0) return out;
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> eta(0.0, noise.sigma);
  for (Eigen::Index m = 0; m < out.rows(); ++m) {
    for (Eigen::Index p = 0; p < out.cols(); ++p) out(m, p) += eta(rng);
  }
  return out;
}

NoisyReconstruction noisy_reconstruct(const MimoSystem& sys,
                                      std::span<const SpectrumSignal> inputs,
                                      const Reconstructor& rec, const NoiseModel& noise,
                                      std::optional<int> postfilter) {
  const auto clean = sample_outputs(sys, inputs, rec.plan());
  NoisyReconstruction out;
  out.reconstructed = reconstruct_spectra(add_noise(clean, noise), rec);
  if (postfilter) {
    for (auto& s : out.reconstructed) s = dirichlet_truncate(s, *postfilter);
  }
  out.xi_tilde = actual_mse(inputs, out.reconstructed).xi;
  return out;
}

std::vector<double> noisy_error_rms(const MimoSystem& sys, std::span<const SpectrumSignal> inputs,
                                    const Reconstructor& rec, double sigma,
                                    std::span<const std::uint64_t> seeds,
                                    std::optional<int> postfilter) {
  if (seeds.empty()) throw ConfigError("noisy_error_rms: no seeds");
  std::vector<double> acc(inputs.size(), 0.0);
  for (const auto seed : seeds) {
    const auto run = noisy_reconstruct(sys, inputs, rec, {sigma, seed}, postfilter);
    for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += run.xi_tilde[r] * run.xi_tilde[r];
  }
  for (auto& v : acc) v = std::sqrt(v / static_cast<double>(seeds.size()));
  return acc;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ConfigError("fit_line: need at least two (x, y) pairs");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("fit_line: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace mimo

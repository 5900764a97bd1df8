// SPDX-License-Identifier: Apache-2.0
//
// Error analysis of the reconstruction operator T for inputs that need not
// be band-limited: the resampling consistency test, the actual MSE xi, the
// translation-averaged MSE eps (closed form and brute-force quadrature), the
// loose beta_max bound, and reconstruction from noisy samples.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mimo/reconstruct.hpp"
#include "mimo/spectrum.hpp"
#include "mimo/system.hpp"

namespace mimo {

struct ConsistencyResult {
  double max_deviation = 0.0;  // max_{m,p} |y^_m(t_p) - y_m(t_p)|
  SampleGrid resampled;        // y^_m(t_p)
};

/// Reconstructs, pushes the reconstruction back through the system and
/// resamples at the original instants.
ConsistencyResult consistency_test(const MimoSystem& sys, const Reconstructor& rec,
                                   const SampleGrid& samples);

struct AveragedMse {
  std::vector<double> eps;                 // eps(x_r, N) per input
  std::vector<double> out_of_band_energy;  // sum_{n notin band} |a_r(n)|^2, |n| <= K
  std::vector<double> tail_energy;         // declared-decay bound on the |n| > K part of eps^2
};

/// Closed-form averaged MSE with every infinite sum truncated to |n| <= K.
/// Throws CapacityError if K does not cover the band or exceeds an input's
/// max_index.
AveragedMse averaged_mse_exact(std::span<const AnalyticSignal> inputs, const MimoSystem& sys,
                               const Reconstructor& rec, int K);

/// Brute-force double trapezoid quadrature of the averaged MSE over
/// tau in [0, 2pi/L) and t in T. tau_nodes = 1 gives the actual MSE.
/// t_nodes = 0 selects max(1024, 8 * half-width). Throws CapacityError when
/// t_nodes < 4 * max(input half-width, band half-width).
std::vector<double> averaged_mse_quadrature(std::span<const SpectrumSignal> inputs,
                                            const MimoSystem& sys, const Reconstructor& rec,
                                            int tau_nodes = 64, int t_nodes = 0);

enum class MseMethod { Parseval, GridQuadrature };

struct ActualMse {
  std::vector<double> xi;
  MseMethod method = MseMethod::Parseval;
};

/// xi(x_r, N) in coefficient space.
ActualMse actual_mse(std::span<const SpectrumSignal> inputs,
                     std::span<const SpectrumSignal> reconstructed);

/// xi(x_r, N) by trapezoid quadrature against uniform reconstruction grids.
ActualMse actual_mse(std::span<const AnalyticSignal> inputs,
                     std::span<const std::vector<Complex>> grids);

struct MseBound {
  std::vector<double> bound;  // upper bound on eps(x_r, N)
  double beta_max = 0.0;
};

/// sqrt(oob_r + m0 beta_max^2 sum_m sum_j sum_{n notin band} |a_j(n) b_mj(n)|^2),
/// including the declared-decay tail beyond K.
MseBound mse_upper_bound(std::span<const AnalyticSignal> inputs, const MimoSystem& sys,
                         const Reconstructor& rec, int K);

struct ErrorReport {
  double actual_mse = 0.0;
  double averaged_mse = 0.0;
  double upper_bound = 0.0;
  double beta_max = 0.0;
  double out_of_band_energy = 0.0;
};

/// Samples the inputs truncated at K, reconstructs, and collects every error
/// measure per input channel.
std::vector<ErrorReport> error_report(std::span<const AnalyticSignal> inputs,
                                      const MimoSystem& sys, const Reconstructor& rec, int K);

/// IID zero-mean Gaussian sample noise.
struct NoiseModel {
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// samples + eta, eta drawn channel by channel in sample order.
SampleGrid add_noise(const SampleGrid& samples, const NoiseModel& noise);

struct NoisyReconstruction {
  std::vector<SpectrumSignal> reconstructed;  // after the optional post-filter
  std::vector<double> xi_tilde;
};

/// Reconstruction from noisy samples, optionally low-pass post-filtered by
/// D_postfilter, with the error against the clean inputs.
NoisyReconstruction noisy_reconstruct(const MimoSystem& sys,
                                      std::span<const SpectrumSignal> inputs,
                                      const Reconstructor& rec, const NoiseModel& noise,
                                      std::optional<int> postfilter = {});

/// Root-mean-square of xi_tilde over one noise realisation per seed.
std::vector<double> noisy_error_rms(const MimoSystem& sys, std::span<const SpectrumSignal> inputs,
                                    const Reconstructor& rec, double sigma,
                                    std::span<const std::uint64_t> seeds,
                                    std::optional<int> postfilter = {});

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace mimo

// SPDX-License-Identifier: Apache-2.0
//
// Reconstruction of the R inputs from the M x L output samples.
//
// Per bin n in I_1 the folded coefficients satisfy d(n) = B(n) a~(n), with
// d_m(n) the L-point discrete transform of channel m. A left inverse Q(n)
// recovers a~(n). Unfolding the rows of Q(n) across the m0 blocks gives the
// table beta_rm(n) over the whole band, whose trigonometric sums g_rm are the
// interpolation kernels of the direct formula
//
//   x_r(t) = (1/L) sum_m sum_p y_m(2 pi p / L) g_rm(t - 2 pi p / L).
//
// fft_reconstruct evaluates the same operator on a uniform grid with two
// FFTs per channel; direct_reconstruct evaluates the double sum literally.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "mimo/plan.hpp"
#include "mimo/spectrum.hpp"
#include "mimo/system.hpp"

namespace mimo {

enum class InverseSource { Pseudoinverse, Explicit };

/// Supplies Q(n), shape (m0 R) x M, for n in I_1.
using ExplicitInverse = std::function<Eigen::MatrixXcd(int n)>;

class Reconstructor {
 public:
  Reconstructor(SamplingPlan plan, std::vector<Eigen::MatrixXcd> Q, InverseSource source);

  const SamplingPlan& plan() const noexcept { return plan_; }
  InverseSource source() const noexcept { return source_; }

  /// Q(n) for n in I_1.
  const Eigen::MatrixXcd& Q(int n) const { return Q_.at(n - plan_.N1); }

  /// beta_rm(n) with 0-based r, m; zero outside [N1, N2].
  Complex beta(int r, int m, int n) const;

  /// max |beta_rm(n)| over the band and all (r, m).
  double beta_max() const;

 private:
  SamplingPlan plan_;
  std::vector<Eigen::MatrixXcd> Q_;
  std::vector<Complex> beta_;  // [(r * M + m) * mu + (n - N1)]
  InverseSource source_;
};

/// Largest entry of |Q(n) B(n) - I| accepted for an explicit inverse.
inline constexpr double kInverseTolerance = 1e-8;

/// Moore-Penrose left inverse per bin (via SVD). Throws SingularSystemError
/// listing every deficient n when the rank certificate fails.
Reconstructor left_inverse(const FoldedSystemMatrix& B, double rank_tol = 1e-10);

/// Adopts a supplied Q(n) after checking Q(n) B(n) = I for each bin.
/// Throws InvalidInverseError naming the first offending n.
Reconstructor left_inverse(const FoldedSystemMatrix& B, const ExplicitInverse& Q);

/// Per n in I_1 (index n - N1), the stacked vector a~(n) = Q(n) d(n).
std::vector<Eigen::VectorXcd> recover_folded_coeffs(const SampleGrid& samples,
                                                    const Reconstructor& rec);

/// Unstacks a~(n) into R spectra supported on [N1, N2].
std::vector<SpectrumSignal> unfold_spectra(std::span<const Eigen::VectorXcd> folded,
                                           const SamplingPlan& plan);

/// Convenience: recover_folded_coeffs followed by unfold_spectra.
std::vector<SpectrumSignal> reconstruct_spectra(const SampleGrid& samples,
                                                const Reconstructor& rec);

/// Output lengths N_r^o, each at least m0 L.
struct ReconstructionRequest {
  std::vector<int> output_counts;
};

/// Uniform-grid values of the reconstructed inputs: element q of output r is
/// [T x_r](2 pi q / N_r^o). Throws ConfigError on shape or request errors.
std::vector<std::vector<Complex>> fft_reconstruct(const SampleGrid& samples,
                                                  const Reconstructor& rec,
                                                  const ReconstructionRequest& req);

/// g_rm(t) = sum_{n in [N1, N2]} beta_rm(n) exp(i n t), 0-based r, m.
Complex interp_kernel(const Reconstructor& rec, int r, int m, double t);

/// Literal evaluation of the interpolation formula at one instant.
std::vector<Complex> direct_reconstruct(const SampleGrid& samples, const Reconstructor& rec,
                                        double t);

}  // namespace mimo

// SPDX-License-Identifier: Apache-2.0
#include "mimo/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mimo/errors.hpp"
#include "mimo/fft.hpp"

namespace mimo {
namespace {

// exp(sign * 2 pi i * num / den) with num reduced modulo den first.
Complex root_of_unity(long long num, long long den, double sign) {
  long long r = num % den;
  if (r < 0) r += den;
  return std::polar(1.0, sign * kTwoPi * static_cast<double>(r) / static_cast<double>(den));
}

void check_grid(const SampleGrid& samples, const SamplingPlan& plan, const char* who) {
  if (samples.rows() != plan.M || samples.cols() != plan.L) {
    throw ConfigError(std::string(who) + ": sample grid is " + std::to_string(samples.rows()) +
                      "x" + std::to_string(samples.cols()) + ", plan expects " +
                      std::to_string(plan.M) + "x" + std::to_string(plan.L));
  }
}

// Algorithm steps 1-2: row p scaled by (1/L) exp(-2 pi i N1 p / L), then a
// length-L forward FFT per channel. Entry (k, m) is d_m(N1 + k).
Eigen::MatrixXcd modulated_transform(const SampleGrid& samples, const SamplingPlan& plan) {
  const int L = plan.L;
  Eigen::MatrixXcd Ye(L, plan.M);
  for (int k = 0; k < L; ++k) {
    const Complex w = root_of_unity(static_cast<long long>(plan.N1) * k, L, -1.0) / double(L);
    for (int m = 0; m < plan.M; ++m) Ye(k, m) = samples(m, k) * w;
  }
  for (int m = 0; m < plan.M; ++m) {
    fft::forward(std::span<Complex>(Ye.col(m).data(), static_cast<std::size_t>(L)));
  }
  return Ye;
}

}  // namespace

Reconstructor::Reconstructor(SamplingPlan plan, std::vector<Eigen::MatrixXcd> Q,
                             InverseSource source)
    : plan_(plan), Q_(std::move(Q)), source_(source) {
  const int mu = plan_.mu();
  beta_.assign(static_cast<std::size_t>(plan_.R) * plan_.M * mu, Complex{});
  for (int i = 0; i < plan_.L; ++i) {
    const auto& q = Q_[i];
    for (int r = 0; r < plan_.R; ++r) {
      for (int k = 0; k < plan_.m0; ++k) {
        const int offset = i + k * plan_.L;  // (n + kL) - N1
        for (int m = 0; m < plan_.M; ++m) {
          beta_[(static_cast<std::size_t>(r) * plan_.M + m) * mu + offset] =
              q(plan_.m0 * r + k, m);
        }
      }
    }
  }
}

Complex Reconstructor::beta(int r, int m, int n) const {
  if (!plan_.in_band(n)) return {};
  return beta_[(static_cast<std::size_t>(r) * plan_.M + m) * plan_.mu() + (n - plan_.N1)];
}

double Reconstructor::beta_max() const {
  double best = 0.0;
  for (const auto& b : beta_) best = std::max(best, std::abs(b));
  return best;
}

Reconstructor left_inverse(const FoldedSystemMatrix& B, double rank_tol) {
  const auto deficient = rank_certificate(B, rank_tol);
  if (!deficient.empty()) {
    std::string list;
    for (std::size_t i = 0; i < deficient.size() && i < 16; ++i) {
      list += (i ? "," : "") + std::to_string(deficient[i]);
    }
    if (deficient.size() > 16) list += ",...";
    throw SingularSystemError("B(n) is rank deficient at n = " + list, deficient);
  }
  std::vector<Eigen::MatrixXcd> Q;
  Q.reserve(B.matrices.size());
  for (const auto& b : B.matrices) {
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Q.push_back(svd.solve(Eigen::MatrixXcd::Identity(b.rows(), b.rows())));
  }
  return {B.plan, std::move(Q), InverseSource::Pseudoinverse};
}

Reconstructor left_inverse(const FoldedSystemMatrix& B, const ExplicitInverse& supplier) {
  const auto& plan = B.plan;
  std::vector<Eigen::MatrixXcd> Q;
  Q.reserve(B.matrices.size());
  for (int i = 0; i < plan.L; ++i) {
    const int n = plan.N1 + i;
    Eigen::MatrixXcd q = supplier(n);
    const auto& b = B.matrices[i];
    if (q.rows() != b.cols() || q.cols() != b.rows()) {
      throw InvalidInverseError("explicit Q(" + std::to_string(n) + ") has shape " +
                                std::to_string(q.rows()) + "x" + std::to_string(q.cols()) +
                                ", expected " + std::to_string(b.cols()) + "x" +
                                std::to_string(b.rows()));
    }
    const double residual =
        (q * b - Eigen::MatrixXcd::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
    if (!(residual <= kInverseTolerance)) {
      throw InvalidInverseError("explicit Q(" + std::to_string(n) +
                                ") is not a left inverse: max |QB - I| = " +
                                std::to_string(residual));
    }
    Q.push_back(std::move(q));
  }
  return {plan, std::move(Q), InverseSource::Explicit};
}

std::vector<Eigen::VectorXcd> recover_folded_coeffs(const SampleGrid& samples,
                                                    const Reconstructor& rec) {
  const auto& plan = rec.plan();
  check_grid(samples, plan, "recover_folded_coeffs");
  const Eigen::MatrixXcd D = modulated_transform(samples, plan);
  std::vector<Eigen::VectorXcd> folded;
  folded.reserve(static_cast<std::size_t>(plan.L));
  for (int k = 0; k < plan.L; ++k) {
    folded.push_back(rec.Q(plan.N1 + k) * D.row(k).transpose());
  }
  return folded;
}

std::vector<SpectrumSignal> unfold_spectra(std::span<const Eigen::VectorXcd> folded,
                                           const SamplingPlan& plan) {
  std::vector<SpectrumSignal> out(static_cast<std::size_t>(plan.R));
  for (int r = 0; r < plan.R; ++r) {
    for (int n = plan.N1; n <= plan.N2; ++n) {
      const auto [k, n0] = block_of(plan, n);
      out[r].set(n, folded[n0 - plan.N1](plan.m0 * r + (k - 1)));
    }
  }
  return out;
}

std::vector<SpectrumSignal> reconstruct_spectra(const SampleGrid& samples,
                                                const Reconstructor& rec) {
  const auto folded = recover_folded_coeffs(samples, rec);
  return unfold_spectra(folded, rec.plan());
}

std::vector<std::vector<Complex>> fft_reconstruct(const SampleGrid& samples,
                                                  const Reconstructor& rec,
                                                  const ReconstructionRequest& req) {
  const auto& plan = rec.plan();
  check_grid(samples, plan, "fft_reconstruct");
  if (req.output_counts.size() != static_cast<std::size_t>(plan.R)) {
    throw ConfigError("fft_reconstruct: need " + std::to_string(plan.R) + " output counts");
  }
  const int L = plan.L;
  const int width = plan.m0 * L;
  for (int count : req.output_counts) {
    if (count < width) {
      throw ConfigError("fft_reconstruct: output count " + std::to_string(count) +
                        " below m0*L = " + std::to_string(width));
    }
  }

  // Steps 1-2.
  const Eigen::MatrixXcd Ye_hat = modulated_transform(samples, plan);

  // Step 3: A~[:, k] = Q(N1 + k) Ye_hat[k, :]^T.
  Eigen::MatrixXcd A(plan.m0 * plan.R, L);
  for (int k = 0; k < L; ++k) A.col(k) = rec.Q(plan.N1 + k) * Ye_hat.row(k).transpose();

  // Step 4: row-wise flatten.
  std::vector<Complex> a_all(static_cast<std::size_t>(plan.m0) * plan.R * L);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (int k = 0; k < L; ++k) a_all[static_cast<std::size_t>(i) * L + k] = A(i, k);
  }

  std::vector<std::vector<Complex>> outputs(static_cast<std::size_t>(plan.R));
  for (int r = 0; r < plan.R; ++r) {
    const int count = req.output_counts[r];
    // Steps 5-6: slice for input r, zero-padded at the end.
    std::vector<Complex> f(static_cast<std::size_t>(count), Complex{});
    std::copy_n(a_all.begin() + static_cast<std::ptrdiff_t>(r) * width, width, f.begin());
    // Step 7.
    fft::inverse(f);
    for (int q = 0; q < count; ++q) {
      f[q] *= static_cast<double>(count) *
              root_of_unity(static_cast<long long>(plan.N1) * q, count, 1.0);
    }
    outputs[r] = std::move(f);
  }
  return outputs;
}

Complex interp_kernel(const Reconstructor& rec, int r, int m, double t) {
  const auto& plan = rec.plan();
  if (r < 0 || r >= plan.R || m < 0 || m >= plan.M) {
    throw ConfigError("interp_kernel: index (r=" + std::to_string(r) + ", m=" +
                      std::to_string(m) + ") out of range");
  }
  Complex sum{};
  for (int n = plan.N1; n <= plan.N2; ++n) sum += rec.beta(r, m, n) * std::polar(1.0, n * t);
  return sum;
}

std::vector<Complex> direct_reconstruct(const SampleGrid& samples, const Reconstructor& rec,
                                        double t) {
  const auto& plan = rec.plan();
  check_grid(samples, plan, "direct_reconstruct");
  const auto tp = grid_instants(plan);
  std::vector<Complex> out(static_cast<std::size_t>(plan.R), Complex{});
  for (int r = 0; r < plan.R; ++r) {
    Complex sum{};
    for (int m = 0; m < plan.M; ++m) {
      for (int p = 0; p < plan.L; ++p) sum += samples(m, p) * interp_kernel(rec, r, m, t - tp[p]);
    }
    out[r] = sum / static_cast<double>(plan.L);
  }
  return out;
}

}  // namespace mimo

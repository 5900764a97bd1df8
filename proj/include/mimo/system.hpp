// SPDX-License-Identifier: Apache-2.0
//
// MIMO LTI channel bank described per frequency: channel (m, r) multiplies
// the n-th Fourier coefficient of input r by b_mr(n).

#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mimo/plan.hpp"
#include "mimo/spectrum.hpp"

namespace mimo {

class ChannelResponse;

namespace response {

struct Constant {
  Complex gain;
};

/// b(n) = (i n)^order.
struct Derivative {
  int order = 1;
};

/// x(t + alpha): b(n) = exp(i n alpha).
struct Translation {
  double alpha = 0.0;
};

/// Explicit b(n) over a finite set of frequencies, `fallback` elsewhere.
struct Tabulated {
  std::map<int, Complex> values;
  Complex fallback{};
};

struct Term;

struct Combo {
  std::vector<Term> terms;
};

}  // namespace response

class ChannelResponse {
 public:
  using Kind = std::variant<response::Constant, response::Derivative, response::Translation,
                            response::Tabulated, response::Combo>;

  ChannelResponse() : kind_(response::Constant{Complex{}}) {}
  ChannelResponse(Kind kind) : kind_(std::move(kind)) {}  // NOLINT(google-explicit-constructor)

  static ChannelResponse constant(Complex gain) { return {response::Constant{gain}}; }
  static ChannelResponse derivative(int order = 1) { return {response::Derivative{order}}; }
  static ChannelResponse translation(double alpha) { return {response::Translation{alpha}}; }

  Complex operator()(int n) const;

  const Kind& kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

namespace response {
struct Term {
  Complex weight;
  ChannelResponse response;
};
}  // namespace response

/// Weighted sum of responses.
ChannelResponse combo(std::vector<response::Term> terms);

/// Text form used by config files, e.g. "2", "d1", "shift(0.3)", "1 + d1".
std::string to_string(const ChannelResponse& h);

/// Inverse of to_string. Throws ConfigError with the offending text.
ChannelResponse parse_response(const std::string& text);

/// M x R grid of channel responses.
class MimoSystem {
 public:
  MimoSystem(int M, int R, std::vector<ChannelResponse> row_major);

  int M() const noexcept { return M_; }
  int R() const noexcept { return R_; }

  /// 0-based output m, input r.
  const ChannelResponse& at(int m, int r) const { return grid_[m * R_ + r]; }

  /// b_mr(n).
  Complex b(int m, int r, int n) const { return at(m, r)(n); }

 private:
  int M_;
  int R_;
  std::vector<ChannelResponse> grid_;
};

/// c_m(n) = sum_r b_mr(n) a_r(n). Throws ConfigError on wrong input count.
std::vector<SpectrumSignal> simulate_outputs(const MimoSystem& sys,
                                             std::span<const SpectrumSignal> inputs);

/// M x L sample grid, row m holding y_m(2 pi p / L).
using SampleGrid = Eigen::MatrixXcd;

SampleGrid sample_outputs(const MimoSystem& sys, std::span<const SpectrumSignal> inputs,
                          const SamplingPlan& plan);

struct TruncatedSamples {
  SampleGrid grid;
  /// Upper bound on sum_r sum_{|n|>K} |a_r(n)|^2 from the declared decay.
  double tail_energy_bound = 0.0;
};

/// Samples outputs driven by analytic inputs truncated to |n| <= K.
/// Throws CapacityError if K exceeds any input's max_index.
TruncatedSamples sample_outputs(const MimoSystem& sys, std::span<const AnalyticSignal> inputs,
                                const SamplingPlan& plan, int K);

/// Per n in I_1 the M x (m0 R) matrix with entry (m, m0 r + s) = b_mr(n + sL)
/// (0-based m, r, s).
struct FoldedSystemMatrix {
  SamplingPlan plan;
  std::vector<Eigen::MatrixXcd> matrices;

  const Eigen::MatrixXcd& at(int n) const { return matrices.at(n - plan.N1); }
};

/// Throws ConfigError when the system and plan disagree on M or R.
FoldedSystemMatrix build_B(const MimoSystem& sys, const SamplingPlan& plan);

/// Frequencies n in I_1 where sigma_min(B(n)) <= tol * sigma_max(B(n)).
/// Empty means every B(n) has full column rank.
std::vector<int> rank_certificate(const FoldedSystemMatrix& B, double tol = 1e-10);

}  // namespace mimo

// SPDX-License-Identifier: Apache-2.0
//
// Fourier-series signals on the unit circle T = [0, 2pi).
//
// A band-limited signal is stored as its finite coefficient map
// n -> a(n), so that x(t) = sum_n a(n) exp(i n t). Non-band-limited test
// signals are wrapped in AnalyticSignal, which pairs a closed-form time
// function with a coefficient provider and a declared decay bound.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <utility>
#include <vector>

namespace mimo {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Trigonometric polynomial held as a sparse coefficient map. Entries whose
/// modulus is exactly zero are never stored.
class SpectrumSignal {
 public:
  using Map = std::map<int, Complex>;

  SpectrumSignal() = default;
  explicit SpectrumSignal(Map coeffs);
  SpectrumSignal(std::initializer_list<std::pair<const int, Complex>> coeffs);

  /// Coefficient at frequency n (zero outside the support).
  Complex operator[](int n) const;

  /// Sets a(n); a zero value removes the entry.
  void set(int n, Complex value);

  const Map& coeffs() const noexcept { return coeffs_; }
  bool empty() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Smallest and largest frequency in the support. Undefined when empty.
  int min_index() const { return coeffs_.begin()->first; }
  int max_index() const { return coeffs_.rbegin()->first; }

  /// max |n| over the support, 0 for the zero signal.
  int half_width() const;

  /// sum |a(n)|^2, i.e. (1/2pi) int |x(t)|^2 dt by Parseval.
  double energy() const;

  SpectrumSignal& operator+=(const SpectrumSignal& other);
  SpectrumSignal& operator*=(Complex scale);

  friend bool operator==(const SpectrumSignal&, const SpectrumSignal&) = default;

 private:
  Map coeffs_;
};

SpectrumSignal operator+(SpectrumSignal lhs, const SpectrumSignal& rhs);
SpectrumSignal operator-(SpectrumSignal lhs, const SpectrumSignal& rhs);
SpectrumSignal operator*(Complex scale, SpectrumSignal sig);

/// x(t) = sum_n a(n) exp(i n t).
Complex eval(const SpectrumSignal& sig, double t);

/// Evaluates on the uniform grid t_q = 2 pi q / count, q = 0..count-1.
std::vector<Complex> eval_uniform(const SpectrumSignal& sig, std::size_t count);

/// Coefficient-wise product a(n) * b(n) with any multiplier b: int -> Complex.
template <typename Multiplier>
SpectrumSignal cyclic_convolve(const SpectrumSignal& x, const Multiplier& b) {
  SpectrumSignal out;
  for (const auto& [n, a] : x.coeffs()) out.set(n, a * Complex(b(n)));
  return out;
}

/// x(t - tau): coefficient a(n) becomes a(n) exp(-i n tau).
SpectrumSignal translate(const SpectrumSignal& x, double tau);

/// Keeps only |n| <= K (convolution with the Dirichlet kernel D_K).
SpectrumSignal dirichlet_truncate(const SpectrumSignal& x, int K);

/// Keeps only N1 <= n <= N2.
SpectrumSignal restrict_band(const SpectrumSignal& x, int N1, int N2);

/// L2(T) distance sqrt(sum |a_x(n) - a_y(n)|^2).
double energy_distance(const SpectrumSignal& x, const SpectrumSignal& y);

/// A periodic signal known through a closed-form time function and a
/// coefficient provider. Coefficients with |n| > max_index are treated as
/// zero; coefficient_bound(n) bounds |a(n)| and quantifies that truncation.
class AnalyticSignal {
 public:
  using TimeFn = std::function<Complex(double)>;
  using CoeffFn = std::function<Complex(int)>;
  using BoundFn = std::function<double(int)>;

  AnalyticSignal(TimeFn time_eval, CoeffFn coefficient, BoundFn coefficient_bound,
                 int max_index);

  /// Exact wrapper around a band-limited signal (bound is zero off-support).
  static AnalyticSignal from_spectrum(SpectrumSignal sig, int max_index = 0);

  /// Coefficients from an oversampled discrete transform of time_eval on
  /// dft_size points; valid for |n| <= max_index < dft_size / 2.
  static AnalyticSignal from_dft(TimeFn time_eval, int dft_size, int max_index,
                                 BoundFn coefficient_bound);

  Complex time_eval(double t) const { return time_(t); }
  Complex coefficient(int n) const { return coeff_(n); }
  double coefficient_bound(int n) const { return bound_(n); }
  int max_index() const noexcept { return max_index_; }

  /// Upper bound on sum_{|n| > K} |a(n)|^2 from the declared decay, summed
  /// until terms fall below double resolution.
  double tail_energy_bound(int K) const;

 private:
  TimeFn time_;
  CoeffFn coeff_;
  BoundFn bound_;
  int max_index_;
};

/// Coefficients of sig for |n| <= K. Throws CapacityError if K > max_index.
SpectrumSignal dirichlet_bandlimit(const AnalyticSignal& sig, int K);

}  // namespace mimo

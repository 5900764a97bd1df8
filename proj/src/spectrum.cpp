// SPDX-License-Identifier: Apache-2.0
#include "mimo/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "mimo/errors.hpp"
#include "mimo/fft.hpp"

namespace mimo {

SpectrumSignal::SpectrumSignal(Map coeffs) {
  for (const auto& [n, a] : coeffs) set(n, a);
}

SpectrumSignal::SpectrumSignal(std::initializer_list<std::pair<const int, Complex>> coeffs) {
  for (const auto& [n, a] : coeffs) set(n, a);
}

Complex SpectrumSignal::operator[](int n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void SpectrumSignal::set(int n, Complex value) {
  if (value == Complex{}) {
    coeffs_.erase(n);
  } else {
    coeffs_[n] = value;
  }
}

int SpectrumSignal::half_width() const {
  if (coeffs_.empty()) return 0;
  return std::max(std::abs(min_index()), std::abs(max_index()));
}

double SpectrumSignal::energy() const {
  double e = 0.0;
  for (const auto& [n, a] : coeffs_) e += std::norm(a);
  return e;
}

SpectrumSignal& SpectrumSignal::operator+=(const SpectrumSignal& other) {
  for (const auto& [n, a] : other.coeffs_) set(n, (*this)[n] + a);
  return *this;
}

SpectrumSignal& SpectrumSignal::operator*=(Complex scale) {
  Map scaled;
  for (const auto& [n, a] : coeffs_) {
    const Complex v = a * scale;
    if (v != Complex{}) scaled.emplace(n, v);
  }
  coeffs_ = std::move(scaled);
  return *this;
}

SpectrumSignal operator+(SpectrumSignal lhs, const SpectrumSignal& rhs) {
  lhs += rhs;
  return lhs;
}

SpectrumSignal operator-(SpectrumSignal lhs, const SpectrumSignal& rhs) {
  for (const auto& [n, a] : rhs.coeffs()) lhs.set(n, lhs[n] - a);
  return lhs;
}

SpectrumSignal operator*(Complex scale, SpectrumSignal sig) {
  sig *= scale;
  return sig;
}

Complex eval(const SpectrumSignal& sig, double t) {
  Complex sum{};
  for (const auto& [n, a] : sig.coeffs()) sum += a * std::polar(1.0, n * t);
  return sum;
}

std::vector<Complex> eval_uniform(const SpectrumSignal& sig, std::size_t count) {
  std::vector<Complex> out(count);
  for (std::size_t q = 0; q < count; ++q) {
    out[q] = eval(sig, kTwoPi * static_cast<double>(q) / static_cast<double>(count));
  }
  return out;
}

SpectrumSignal translate(const SpectrumSignal& x, double tau) {
  if (tau == 0.0) return x;
  SpectrumSignal out;
  for (const auto& [n, a] : x.coeffs()) out.set(n, a * std::polar(1.0, -n * tau));
  return out;
}

SpectrumSignal dirichlet_truncate(const SpectrumSignal& x, int K) { return restrict_band(x, -K, K); }

SpectrumSignal restrict_band(const SpectrumSignal& x, int N1, int N2) {
  SpectrumSignal out;
  for (auto it = x.coeffs().lower_bound(N1); it != x.coeffs().end() && it->first <= N2; ++it) {
    out.set(it->first, it->second);
  }
  return out;
}

double energy_distance(const SpectrumSignal& x, const SpectrumSignal& y) {
  double sum = 0.0;
  auto ix = x.coeffs().begin();
  auto iy = y.coeffs().begin();
  const auto ex = x.coeffs().end();
  const auto ey = y.coeffs().end();
  while (ix != ex || iy != ey) {
    if (iy == ey || (ix != ex && ix->first < iy->first)) {
      sum += std::norm(ix->second);
      ++ix;
    } else if (ix == ex || iy->first < ix->first) {
      sum += std::norm(iy->second);
      ++iy;
    } else {
      sum += std::norm(ix->second - iy->second);
      ++ix;
      ++iy;
    }
  }
  return std::sqrt(sum);
}

AnalyticSignal::AnalyticSignal(TimeFn time_eval, CoeffFn coefficient, BoundFn coefficient_bound,
                               int max_index)
    : time_(std::move(time_eval)),
      coeff_(std::move(coefficient)),
      bound_(std::move(coefficient_bound)),
      max_index_(max_index) {}

AnalyticSignal AnalyticSignal::from_spectrum(SpectrumSignal sig, int max_index) {
  auto shared = std::make_shared<const SpectrumSignal>(std::move(sig));
  const int width = std::max(shared->half_width(), max_index);
  return AnalyticSignal([shared](double t) { return eval(*shared, t); },
                        [shared](int n) { return (*shared)[n]; },
                        [shared](int n) { return std::abs((*shared)[n]); }, width);
}

AnalyticSignal AnalyticSignal::from_dft(TimeFn time_eval, int dft_size, int max_index,
                                        BoundFn coefficient_bound) {
  if (2 * max_index >= dft_size) {
    throw CapacityError("from_dft: max_index " + std::to_string(max_index) +
                        " needs more than " + std::to_string(dft_size) + " points");
  }
  std::vector<Complex> samples(static_cast<std::size_t>(dft_size));
  for (int p = 0; p < dft_size; ++p) samples[p] = time_eval(kTwoPi * p / dft_size);
  fft::forward(samples);
  auto coeffs = std::make_shared<std::vector<Complex>>(2 * max_index + 1);
  for (int n = -max_index; n <= max_index; ++n) {
    const int bin = n >= 0 ? n : n + dft_size;
    (*coeffs)[n + max_index] = samples[bin] / static_cast<double>(dft_size);
  }
  auto coefficient = [coeffs, max_index](int n) {
    if (n < -max_index || n > max_index) return Complex{};
    return (*coeffs)[n + max_index];
  };
  return AnalyticSignal(std::move(time_eval), coefficient, std::move(coefficient_bound),
                        max_index);
}

double AnalyticSignal::tail_energy_bound(int K) const {
  double sum = 0.0;
  for (int n = std::max(K, -1) + 1; n <= max_index_; ++n) {
    sum += std::pow(bound_(n), 2) + std::pow(bound_(-n), 2);
  }
  return sum;
}

SpectrumSignal dirichlet_bandlimit(const AnalyticSignal& sig, int K) {
  if (K < 0) throw ConfigError("dirichlet_bandlimit: negative cutoff");
  if (K > sig.max_index()) {
    throw CapacityError("dirichlet_bandlimit: cutoff " + std::to_string(K) +
                        " exceeds max_index " + std::to_string(sig.max_index()));
  }
  SpectrumSignal out;
  for (int n = -K; n <= K; ++n) out.set(n, sig.coefficient(n));
  return out;
}

}  // namespace mimo

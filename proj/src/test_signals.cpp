// SPDX-License-Identifier: Apache-2.0
#include "mimo/test_signals.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace mimo::signals {
namespace {

constexpr int kHardyDftSize = 4096;
constexpr int kHardyMaxIndex = 1024;
constexpr double kCauchyRadius = 1.19;

// 64 panels of 30-point Gauss-Legendre resolve every harmonic used here
// (|n| <= a few hundred) to machine precision.
constexpr int kPanels = 64;

Complex fourier_coefficient(double (*f)(double), int n) {
  using Rule = boost::math::quadrature::gauss<double, 30>;
  const double h = kTwoPi / kPanels;
  double re = 0.0;
  double im = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double a = k * h;
    re += Rule::integrate([&](double t) { return f(t) * std::cos(n * t); }, a, a + h);
    im -= Rule::integrate([&](double t) { return f(t) * std::sin(n * t); }, a, a + h);
  }
  return Complex(re, im) / kTwoPi;
}

// |a(n)| <= (|f(2pi) - f(0)| + TV(f)) / (2 pi |n|) by one integration by parts.
double variation_constant(double (*f)(double)) {
  constexpr int kGrid = 1 << 16;
  double tv = 0.0;
  double prev = f(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = f(kTwoPi * i / kGrid);
    tv += std::abs(v - prev);
    prev = v;
  }
  const double jump = std::abs(f(kTwoPi) - f(0.0));
  return 1.05 * (jump + tv) / kTwoPi;
}

AnalyticSignal polynomial_signal(double (*f)(double), int max_index) {
  struct Cache {
    std::mutex mutex;
    std::map<int, Complex> values;
  };
  auto cache = std::make_shared<Cache>();
  auto coefficient = [f, cache, max_index](int n) {
    if (n < -max_index || n > max_index) return Complex{};
    std::lock_guard lock(cache->mutex);
    auto it = cache->values.find(n);
    if (it != cache->values.end()) return it->second;
    const Complex a = fourier_coefficient(f, n);
    cache->values.emplace(n, a);
    return a;
  };
  const double c = variation_constant(f);
  const double mean_bound = std::abs(fourier_coefficient(f, 0));
  auto bound = [c, mean_bound](int n) { return n == 0 ? mean_bound : c / std::abs(n); };
  auto periodic = [f](double t) { return Complex(f(t - kTwoPi * std::floor(t / kTwoPi))); };
  return AnalyticSignal(periodic, coefficient, bound, max_index);
}

AnalyticSignal hardy_signal(Complex (*phi)(Complex)) {
  // Cauchy estimate on |z| = 1.19, inside the nearest pole at 1.2.
  constexpr int kCircle = 1 << 14;
  double peak = 0.0;
  for (int i = 0; i < kCircle; ++i) {
    peak = std::max(peak, std::abs(phi(std::polar(kCauchyRadius, kTwoPi * i / kCircle))));
  }
  const double c = 1.01 * peak;
  auto time_eval = [phi](double t) { return Complex(phi(std::polar(1.0, t)).real()); };
  // Computed coefficients bottom out at the transform's rounding level.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * peak;
  auto bound = [c, floor](int n) { return c * std::pow(kCauchyRadius, -std::abs(n)) + floor; };
  return AnalyticSignal::from_dft(time_eval, kHardyDftSize, kHardyMaxIndex, bound);
}

}  // namespace

double f1(double t) {
  return 0.015 *
         (0.12 * std::pow(t, 4) - 1.28 * std::pow(t, 3) - 5.88 * t * t + std::exp(-t * t) -
          4.38 * t + 32.2325) *
         std::sin(15.0 * t) * std::cos(1.5 - t);
}

double f2(double t) {
  return 0.03 *
         (-0.3 * std::pow(t, 4) + 1.2 * std::pow(t, 3) + 1.6 * t * t + 2.0 * std::exp(-t * t) -
          3.0 * t + 35.0) *
         std::sin(2.0 * t) * std::cos(15.0 * t);
}

Complex phi1(Complex z) {
  return (0.08 * z * z + 0.06 * std::pow(z, 10)) / ((1.3 - z) * (1.5 - z)) +
         (0.05 * std::pow(z, 3) + 0.09 * std::pow(z, 10)) / ((1.2 + z) * (1.3 + z));
}

Complex phi2(Complex z) {
  return (0.036 * std::pow(z, 10) + 0.024 * z * z) / ((z - 1.3) * (1.6 - z)) -
         (0.06 * std::pow(z, 10) + 0.048 * std::pow(z, 3)) / ((z + 1.2) * (z + 1.35));
}

AnalyticSignal f1_signal() { return polynomial_signal(&f1, 4096); }
AnalyticSignal f2_signal() { return polynomial_signal(&f2, 4096); }

AnalyticSignal hardy1() { return hardy_signal(&phi1); }
AnalyticSignal hardy2() { return hardy_signal(&phi2); }

std::array<SpectrumSignal, 2> bandlimited_pair() {
  static const std::array<SpectrumSignal, 2> pair = {dirichlet_bandlimit(f1_signal(), 25),
                                                     dirichlet_bandlimit(f2_signal(), 25)};
  return pair;
}

std::array<AnalyticSignal, 2> hardy_pair() { return {hardy1(), hardy2()}; }

}  // namespace mimo::signals

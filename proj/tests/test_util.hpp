// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "mimo/spectrum.hpp"
#include "mimo/system.hpp"

namespace mimo::testing {

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  return {g(rng), g(rng)};
}

inline SpectrumSignal random_spectrum(std::mt19937_64& rng, int N1, int N2, double scale = 1.0) {
  SpectrumSignal s;
  for (int n = N1; n <= N2; ++n) s.set(n, random_complex(rng, scale));
  return s;
}

/// c0 + c1 * d1 + c2 * shift(alpha) per channel, generic enough for full rank.
inline MimoSystem random_system(std::mt19937_64& rng, int M, int R) {
  std::uniform_real_distribution<double> angle(0.05, 1.0);
  std::vector<ChannelResponse> grid;
  for (int i = 0; i < M * R; ++i) {
    grid.push_back(combo({{random_complex(rng), ChannelResponse::constant(1.0)},
                          {random_complex(rng, 0.3), ChannelResponse::derivative(1)},
                          {random_complex(rng), ChannelResponse::translation(angle(rng))}}));
  }
  return MimoSystem(M, R, std::move(grid));
}

/// Trapezoid rule for (1/2pi) int_0^{2pi} f(t) dt.
template <typename F>
double trapezoid_mean(F f, int nodes) {
  double sum = 0.0;
  for (int q = 0; q < nodes; ++q) sum += f(kTwoPi * q / nodes);
  return sum / nodes;
}

/// Composite Simpson rule for (1/2pi) int_a^b f(t) dt, `panels` even.
template <typename F>
Complex simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  Complex sum = f(a) + f(b);
  for (int k = 1; k < panels; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return sum * h / 3.0 / kTwoPi;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace mimo::testing

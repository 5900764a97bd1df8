// SPDX-License-Identifier: Apache-2.0
#include "mimo/plan.hpp"

#include <string>

#include "mimo/errors.hpp"
#include "mimo/spectrum.hpp"

namespace mimo {
namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SamplingPlan make_plan(int M, int R, int N1, int N2, std::optional<int> L_override) {
  if (R < 1) throw ConfigError("make_plan: need at least one input channel");
  if (M < R) {
    throw InsufficientChannelsError("make_plan: M=" + std::to_string(M) + " < R=" +
                                    std::to_string(R) +
                                    ", perfect reconstruction needs M >= R");
  }
  if (N2 < N1) throw ConfigError("make_plan: empty band, N2 < N1");

  SamplingPlan plan;
  plan.M = M;
  plan.R = R;
  plan.m0 = M / R;
  plan.N1 = N1;
  plan.requested_N2 = N2;
  const int mu = N2 - N1 + 1;
  const int minimal = (mu + plan.m0 - 1) / plan.m0;
  plan.L = minimal;
  if (L_override) {
    if (*L_override < minimal) {
      throw ConfigError("make_plan: L=" + std::to_string(*L_override) +
                        " cannot cover bandwidth " + std::to_string(mu) + " (needs L >= " +
                        std::to_string(minimal) + ")");
    }
    plan.L = *L_override;
  }
  plan.N2 = N1 + plan.m0 * plan.L - 1;
  return plan;
}

SamplingPlan make_centered_plan(int M, int R, int L) {
  if (R < 1 || M < R) return make_plan(M, R, 0, 0);  // raises the usual error
  const int width = (M / R) * L;
  const int N1 = -((width - 1) / 2);
  return make_plan(M, R, N1, N1 + width - 1);
}

BlockIndex block_of(const SamplingPlan& plan, int n) {
  if (!plan.in_band(n)) {
    throw OutOfBandError("block_of: n=" + std::to_string(n) + " outside [" +
                         std::to_string(plan.N1) + ", " + std::to_string(plan.N2) + "]");
  }
  const int k = zblock_of(plan, n);
  return {k, n - (k - 1) * plan.L};
}

int zblock_of(const SamplingPlan& plan, int n) { return floor_div(n - plan.N1, plan.L) + 1; }

std::vector<double> grid_instants(const SamplingPlan& plan) {
  std::vector<double> t(static_cast<std::size_t>(plan.L));
  for (int p = 0; p < plan.L; ++p) t[p] = kTwoPi * p / plan.L;
  return t;
}

}  // namespace mimo

// SPDX-License-Identifier: Apache-2.0
//
// Sampling plan: m0 = floor(M/R) stacked blocks of L consecutive
// frequencies tile the band [N1, N2]; every output channel is sampled at
// the L instants 2 pi p / L.

#pragma once

#include <optional>
#include <vector>

namespace mimo {

struct SamplingPlan {
  int M = 1;   // output channels
  int R = 1;   // input channels
  int m0 = 1;  // floor(M / R)
  int L = 1;   // samples per channel
  int N1 = 0;  // band lower edge
  int N2 = 0;  // band upper edge, after extension
  int requested_N2 = 0;

  int mu() const { return N2 - N1 + 1; }
  int total_samples() const { return M * L; }
  bool in_band(int n) const { return N1 <= n && n <= N2; }
};

/// m0 = floor(M/R), L = ceil(mu/m0) (or L_override when given, which must be
/// at least that), and N2 extended upward so that N2 - N1 + 1 = m0 L.
/// Throws InsufficientChannelsError if M < R, ConfigError on an empty band
/// or a too-small override.
SamplingPlan make_plan(int M, int R, int N1, int N2, std::optional<int> L_override = {});

/// Band [N1, N2] of width m0*L centred on zero (N2 gets the extra bin when
/// the width is even). Used by the L sweeps.
SamplingPlan make_centered_plan(int M, int R, int L);

struct BlockIndex {
  int k;   // 1-based block, n in I_k
  int n0;  // residue n - (k-1) L in I_1
};

/// Block containing n, restricted to the band. Throws OutOfBandError.
BlockIndex block_of(const SamplingPlan& plan, int n);

/// Index k of the Z-indexed block I_k = [N1+(k-1)L, N1+kL-1] containing any
/// integer n; equals block_of(...).k inside the band.
int zblock_of(const SamplingPlan& plan, int n);

/// t_p = 2 pi p / L, p = 0..L-1.
std::vector<double> grid_instants(const SamplingPlan& plan);

}  // namespace mimo

// SPDX-License-Identifier: Apache-2.0
//
// Preset catalog. Examples 1-8 are the left-invertible systems with closed
// form B(n) and Q(n); the five named schemes pick examples 1, 2, 5, 6, 7.
//
//   s22d = ex1   y1 = x1 + x2',          y2 = x1' + x2
//   s22t = ex2   y1 = x1 + x2(t+a),      y2 = x1(t+a) + 2 x2
//          ex3   y1 = x1 + x2',          y2 = x1 + x1' + x2
//          ex4   y1 = x1 + x2(t+a),      y2 = x1' + x2
//   s23t = ex5   y1 = x1 + x2(t+a),      y2 = x1(t+a) + x2,  y3 = 2 x1 + x2
//   s23d = ex6   y1 = x1 + x2,           y2 = x1 + x2',      y3 = x1' + x2
//   s24d = ex7   y1 = 2 x1 + x2, y2 = x1 + x2', y3 = x1' + x2, y4 = x1' + x2'
//          ex8   y1 = 2 x1 + x2, y2 = x1(t+a) + x2, y3 = x1 + x2(t+a),
//                y4 = x1(t+a) + x2(t+a)

#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "mimo/reconstruct.hpp"
#include "mimo/system.hpp"

namespace mimo::cli {

inline constexpr int kExampleCount = 8;

/// Example number (1-8) for a scheme id (s22d, ..., ex1, ..., ex8).
/// Throws ConfigError for unknown ids, including "custom".
int example_of(std::string_view scheme);

/// Known scheme ids in catalog order.
const std::vector<std::string>& scheme_ids();

/// Default translation parameter 2 pi * 0.37 / L.
double default_alpha(int L);

int example_outputs(int example);
bool example_uses_translation(int example);

MimoSystem example_system(int example, double alpha);

/// Closed-form B(n) for the plan's m0 and L.
Eigen::MatrixXcd example_B(int example, int n, double alpha, int L);

/// Closed-form left inverse Q(n).
Eigen::MatrixXcd example_Q(int example, int n, double alpha, int L);

ExplicitInverse example_inverse(int example, double alpha, int L);

/// Closed-form upper bound on beta_max for each example.
double beta_bound(int example);

}  // namespace mimo::cli

// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mimo/errors.hpp"
#include "mimo/plan.hpp"
#include "mimo/system.hpp"
#include "mimo/test_signals.hpp"
#include "test_util.hpp"

namespace mimo {
namespace {

constexpr Complex I{0.0, 1.0};

MimoSystem row1() {
  const auto one = ChannelResponse::constant(1.0);
  const auto d = ChannelResponse::derivative(1);
  return MimoSystem(2, 2, {one, d, d, one});
}

TEST(Response, Kinds) {
  EXPECT_EQ(ChannelResponse::constant({2.0, 1.0})(17), Complex(2.0, 1.0));
  EXPECT_EQ(ChannelResponse::derivative(1)(3), Complex(0.0, 3.0));
  EXPECT_EQ(ChannelResponse::derivative(2)(3), Complex(-9.0, 0.0));
  EXPECT_LT(std::abs(ChannelResponse::translation(0.5)(4) - std::polar(1.0, 2.0)), 1e-15);
  response::Tabulated tab{{{1, 2.0}, {-1, {0.0, 1.0}}}, 0.5};
  const ChannelResponse t(tab);
  EXPECT_EQ(t(1), Complex(2.0));
  EXPECT_EQ(t(-1), Complex(0.0, 1.0));
  EXPECT_EQ(t(9), Complex(0.5));
}

TEST(Response, ComboIsWeightedSum) {
  std::mt19937_64 rng(1);
  const auto a = testing::random_system(rng, 1, 1).at(0, 0);
  const auto b = ChannelResponse::derivative(2);
  const Complex wa = testing::random_complex(rng);
  const Complex wb = testing::random_complex(rng);
  const auto c = combo({{wa, a}, {wb, b}});
  for (int n = -20; n <= 20; ++n) EXPECT_EQ(c(n), wa * a(n) + wb * b(n));
}

TEST(Response, TextRoundTrip) {
  for (const std::string text :
       {"1", "d1", "2*d3", "(0.5,-1)*shift(0.25)", "1 + d1", "1 - 2*d1 + shift(0.3)",
        "table(-1:0:1, 2:3:0, default=0.5:0)", "-d1"}) {
    const auto h = parse_response(text);
    const auto again = parse_response(to_string(h));
    for (int n = -6; n <= 6; ++n) EXPECT_EQ(h(n), again(n)) << text << " at n=" << n;
  }
  EXPECT_EQ(parse_response("1 + d1")(2), Complex(1.0, 2.0));
  EXPECT_EQ(parse_response("-d1")(2), Complex(0.0, -2.0));
  EXPECT_THROW(parse_response("d1 +"), ConfigError);
  EXPECT_THROW(parse_response("blah"), ConfigError);
}

TEST(System, IdentityAndZeroInputs) {
  const MimoSystem id(1, 1, {ChannelResponse::constant(1.0)});
  std::mt19937_64 rng(2);
  const std::vector<SpectrumSignal> x = {testing::random_spectrum(rng, -4, 4)};
  EXPECT_EQ(simulate_outputs(id, x)[0], x[0]);

  const std::vector<SpectrumSignal> zeros(2);
  for (const auto& y : simulate_outputs(row1(), zeros)) EXPECT_TRUE(y.empty());
  EXPECT_THROW(simulate_outputs(row1(), x), ConfigError);
}

TEST(System, Row1Outputs) {
  const std::vector<SpectrumSignal> x = {SpectrumSignal{{1, 1.0}}, SpectrumSignal{{1, 1.0}}};
  const auto y = simulate_outputs(row1(), x);
  EXPECT_EQ(y[0][1], 1.0 + I);
  EXPECT_EQ(y[1][1], I + 1.0);

  // Time-domain oracle: y1 = x1 + x2' with a central difference derivative.
  const double h = 1e-5;
  auto e = [](double t) { return std::polar(1.0, t); };
  Complex coef{};
  constexpr int kNodes = 256;
  for (int q = 0; q < kNodes; ++q) {
    const double t = kTwoPi * q / kNodes;
    const Complex y1 = e(t) + (e(t + h) - e(t - h)) / (2 * h);
    coef += y1 * std::polar(1.0, -t) / double(kNodes);
  }
  EXPECT_LT(std::abs(coef - y[0][1]), 1e-9);
}

TEST(System, SamplesMatchEvaluation) {
  std::mt19937_64 rng(4);
  const auto sys = testing::random_system(rng, 3, 2);
  const auto plan = make_plan(3, 2, -7, 9);
  const std::vector<SpectrumSignal> x = {testing::random_spectrum(rng, -7, 9),
                                         testing::random_spectrum(rng, -7, 9)};
  const auto grid = sample_outputs(sys, x, plan);
  const auto y = simulate_outputs(sys, x);
  const auto t = grid_instants(plan);
  for (int m = 0; m < 3; ++m) {
    for (int p = 0; p < plan.L; ++p) EXPECT_EQ(grid(m, p), eval(y[m], t[p]));
  }
}

TEST(System, RealPresetSamplesAreReal) {
  const auto one = ChannelResponse::constant(1.0);
  const auto s = ChannelResponse::translation(kTwoPi * 0.37 / 51);
  const MimoSystem s22t(2, 2, {one, s, s, ChannelResponse::constant(2.0)});
  const auto pair = signals::bandlimited_pair();
  const auto grid = sample_outputs(s22t, pair, make_plan(2, 2, -25, 25));
  EXPECT_LT(grid.imag().cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_GT(grid.real().cwiseAbs().maxCoeff(), 0.1);
}

TEST(System, TruncatedHardySamplesConverge) {
  const auto hardy = signals::hardy_pair();
  const auto plan = make_plan(2, 2, -25, 25);
  const auto a = sample_outputs(row1(), hardy, plan, 512);
  const auto b = sample_outputs(row1(), hardy, plan, 1024);
  EXPECT_LT(testing::max_abs(a.grid - b.grid), 1e-10);
  EXPECT_GT(a.tail_energy_bound, b.tail_energy_bound);
  EXPECT_THROW(sample_outputs(row1(), hardy, plan, 5000), CapacityError);
}

TEST(System, BuildBRow1) {
  const auto plan = make_plan(2, 2, -25, 25);
  const auto B = build_B(row1(), plan);
  for (int n = plan.N1; n < plan.N1 + plan.L; ++n) {
    Eigen::Matrix2cd expect;
    expect << 1.0, I * double(n), I * double(n), 1.0;
    EXPECT_EQ(testing::max_abs(B.at(n) - expect), 0.0);
  }
  EXPECT_EQ(testing::max_abs(B.at(0) - Eigen::Matrix2cd::Identity()), 0.0);
  EXPECT_THROW(build_B(row1(), make_plan(3, 2, -5, 5)), ConfigError);
}

TEST(System, BuildBFoldedLayout) {
  const auto one = ChannelResponse::constant(1.0);
  const auto two = ChannelResponse::constant(2.0);
  const auto d = ChannelResponse::derivative(1);
  const MimoSystem sys(4, 2, {two, one, one, d, d, one, d, d});
  const auto plan = make_plan(4, 2, -25, 25);
  const int L = plan.L;
  for (int n : {-25, -3, 0}) {
    const Complex a = I * double(n);
    const Complex b = I * double(n + L);
    Eigen::Matrix4cd expect;
    expect << 2.0, 2.0, 1.0, 1.0, 1.0, 1.0, a, b, a, b, 1.0, 1.0, a, b, a, b;
    EXPECT_EQ(testing::max_abs(build_B(sys, plan).at(n) - expect), 0.0) << n;
  }
}

TEST(System, RankCertificate) {
  EXPECT_TRUE(rank_certificate(build_B(row1(), make_plan(2, 2, -40, 40))).empty());

  const auto one = ChannelResponse::constant(1.0);
  const MimoSystem dup(2, 2, {one, one, one, one});
  const auto plan = make_plan(2, 2, -5, 5);
  const auto bad = rank_certificate(build_B(dup, plan));
  EXPECT_EQ(bad.size(), static_cast<std::size_t>(plan.L));
  EXPECT_EQ(bad.front(), -5);

  const auto s = ChannelResponse::translation(0.4);
  const MimoSystem row2(2, 2, {one, s, s, ChannelResponse::constant(2.0)});
  const auto p2 = make_plan(2, 2, -60, 60);
  const auto B2 = build_B(row2, p2);
  EXPECT_TRUE(rank_certificate(B2).empty());
  for (const auto& b : B2.matrices) EXPECT_GE(std::abs(b.determinant()), 1.0 - 1e-12);
}

TEST(System, FoldConsistency) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> pick(1, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const int R = pick(rng);
    const int M = R + pick(rng) - 1;
    const int N1 = std::uniform_int_distribution<int>(-20, 5)(rng);
    const auto plan = make_plan(M, R, N1, N1 + pick(rng) * 5);
    const auto sys = testing::random_system(rng, M, R);
    std::vector<SpectrumSignal> x;
    for (int r = 0; r < R; ++r) x.push_back(testing::random_spectrum(rng, plan.N1, plan.N2));
    const auto c = simulate_outputs(sys, x);
    const auto B = build_B(sys, plan);
    for (int n = plan.N1; n < plan.N1 + plan.L; ++n) {
      Eigen::VectorXcd folded = Eigen::VectorXcd::Zero(M);
      for (int m = 0; m < M; ++m) {
        for (int k = 0; k < plan.m0; ++k) folded(m) += c[m][n + k * plan.L];
      }
      Eigen::VectorXcd stacked(plan.m0 * R);
      for (int r = 0; r < R; ++r) {
        for (int s = 0; s < plan.m0; ++s) stacked(plan.m0 * r + s) = x[r][n + s * plan.L];
      }
      const Eigen::VectorXcd d = B.at(n) * stacked;
      EXPECT_LE((d - folded).cwiseAbs().maxCoeff(), 1e-12 * folded.cwiseAbs().maxCoeff());
    }
  }
}

TEST(System, DftBridge) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const int R = 1 + trial % 3;
    const int M = R + trial % 4;
    const auto plan = make_plan(M, R, -9 - trial % 5, 11 + trial % 7);
    const auto sys = testing::random_system(rng, M, R);
    std::vector<SpectrumSignal> x;
    for (int r = 0; r < R; ++r) x.push_back(testing::random_spectrum(rng, plan.N1, plan.N2));
    const auto c = simulate_outputs(sys, x);
    const auto grid = sample_outputs(sys, x, plan);
    const auto t = grid_instants(plan);
    for (int m = 0; m < M; ++m) {
      for (int n = plan.N1; n < plan.N1 + plan.L; ++n) {
        Complex d{};
        for (int k = 0; k < plan.m0; ++k) d += c[m][n + k * plan.L];
        Complex bridge{};
        for (int p = 0; p < plan.L; ++p) bridge += grid(m, p) * std::polar(1.0, -n * t[p]);
        bridge /= double(plan.L);
        EXPECT_LE(std::abs(bridge - d), 1e-10 * std::max(1.0, std::abs(d)));
      }
    }
  }
}

}  // namespace
}  // namespace mimo

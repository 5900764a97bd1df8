// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mimo/analysis.hpp"
#include "mimo/cli/presets.hpp"
#include "mimo/errors.hpp"
#include "mimo/test_signals.hpp"
#include "test_util.hpp"

namespace mimo {
namespace {

struct Setup {
  SamplingPlan plan;
  MimoSystem sys;
  Reconstructor rec;
};

Setup preset(int example, int L, bool explicit_q = false) {
  const double alpha = cli::default_alpha(L);
  auto sys = cli::example_system(example, alpha);
  const auto plan = make_centered_plan(sys.M(), sys.R(), L);
  const auto B = build_B(sys, plan);
  auto rec = explicit_q ? left_inverse(B, cli::example_inverse(example, alpha, L)) : left_inverse(B);
  return {plan, std::move(sys), std::move(rec)};
}

std::vector<AnalyticSignal> analytic(const std::vector<SpectrumSignal>& x, int K) {
  std::vector<AnalyticSignal> out;
  for (const auto& s : x) out.push_back(AnalyticSignal::from_spectrum(s, K));
  return out;
}

TEST(Consistency, DivisibleSchemesWithHardyInputs) {
  const auto hardy = signals::hardy_pair();
  for (int ex : {1, 2, 7}) {
    for (int L : {11, 51}) {
      const auto s = preset(ex, L);
      const auto samples = sample_outputs(s.sys, hardy, s.plan, 1024).grid;
      EXPECT_LE(consistency_test(s.sys, s.rec, samples).max_deviation, 1e-9) << ex << " " << L;
    }
  }
}

TEST(Consistency, S23tIsInconsistent) {
  const auto s = preset(5, 11);
  const auto samples = sample_outputs(s.sys, signals::hardy_pair(), s.plan, 1024).grid;
  const auto result = consistency_test(s.sys, s.rec, samples);
  EXPECT_GT(result.max_deviation, 1e-6);
  EXPECT_EQ(result.resampled.rows(), 3);
  EXPECT_EQ(result.resampled.cols(), 11);
}

TEST(Consistency, BandLimitedAlwaysConsistent) {
  const auto pair = signals::bandlimited_pair();
  for (int ex = 1; ex <= cli::kExampleCount; ++ex) {
    const auto s = preset(ex, cli::example_outputs(ex) == 4 ? 26 : 51);
    const auto samples = sample_outputs(s.sys, pair, s.plan);
    EXPECT_LE(consistency_test(s.sys, s.rec, samples).max_deviation, 1e-9) << ex;
  }
}

TEST(AveragedMse, BandLimitedIsZero) {
  const auto pair = signals::bandlimited_pair();
  const auto s = preset(1, 51);
  const auto x = analytic({pair[0], pair[1]}, 25);
  const auto eps = averaged_mse_exact(x, s.sys, s.rec, 25);
  for (double e : eps.eps) EXPECT_EQ(e, 0.0);
  const auto bound = mse_upper_bound(x, s.sys, s.rec, 25);
  for (double b : bound.bound) EXPECT_EQ(b, 0.0);
  const std::vector<SpectrumSignal> in = {pair[0], pair[1]};
  for (double e : averaged_mse_quadrature(in, s.sys, s.rec)) EXPECT_LE(e, 1e-8);
}

TEST(AveragedMse, CapacityErrors) {
  const auto s = preset(1, 51);
  const auto hardy = signals::hardy_pair();
  EXPECT_THROW(averaged_mse_exact(hardy, s.sys, s.rec, 20), CapacityError);
  EXPECT_THROW(averaged_mse_exact(hardy, s.sys, s.rec, 2000), CapacityError);
  EXPECT_THROW(mse_upper_bound(hardy, s.sys, s.rec, 20), CapacityError);
  std::mt19937_64 rng(1);
  const std::vector<SpectrumSignal> wide = {testing::random_spectrum(rng, -200, 200),
                                            testing::random_spectrum(rng, -3, 3)};
  EXPECT_THROW(averaged_mse_quadrature(wide, s.sys, s.rec, 4, 512), CapacityError);
}

TEST(AveragedMse, ExactMatchesQuadrature) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> pick_ex(1, cli::kExampleCount);
  std::uniform_int_distribution<int> pick_L(5, 16);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = preset(pick_ex(rng), pick_L(rng), trial % 2 == 1);
    const int K = std::max(std::abs(s.plan.N1), std::abs(s.plan.N2)) + 3 * s.plan.L;
    std::vector<SpectrumSignal> x;
    for (int r = 0; r < s.plan.R; ++r) {
      SpectrumSignal sig;
      for (int n = -K; n <= K; ++n) sig.set(n, testing::random_complex(rng, std::pow(0.9, std::abs(n))));
      x.push_back(sig);
    }
    const auto exact = averaged_mse_exact(analytic(x, K), s.sys, s.rec, K);
    const auto quad = averaged_mse_quadrature(x, s.sys, s.rec);
    for (int r = 0; r < s.plan.R; ++r) {
      EXPECT_GT(exact.eps[r], 0.0);
      EXPECT_NEAR(exact.eps[r], quad[r], 1e-6 * exact.eps[r]) << "trial " << trial;
      EXPECT_EQ(exact.tail_energy[r], 0.0);
    }
  }
}

TEST(AveragedMse, SingleTauNodeIsActualMse) {
  std::mt19937_64 rng(42);
  const auto s = preset(7, 9);
  std::vector<SpectrumSignal> x = {testing::random_spectrum(rng, -30, 30),
                                   testing::random_spectrum(rng, -30, 30)};
  const auto xi_quad = averaged_mse_quadrature(x, s.sys, s.rec, 1);
  const auto xhat = reconstruct_spectra(sample_outputs(s.sys, x, s.plan), s.rec);
  const auto xi = actual_mse(x, xhat);
  EXPECT_EQ(xi.method, MseMethod::Parseval);
  for (int r = 0; r < 2; ++r) EXPECT_NEAR(xi_quad[r], xi.xi[r], 1e-10 * xi.xi[r]);
}

TEST(ActualMse, GridMethod) {
  const auto pair = signals::bandlimited_pair();
  const auto s = preset(2, 51);
  const auto samples = sample_outputs(s.sys, pair, s.plan);
  const auto grids = fft_reconstruct(samples, s.rec, {{408, 408}});
  const auto x = analytic({pair[0], pair[1]}, 25);
  const auto xi = actual_mse(x, grids);
  EXPECT_EQ(xi.method, MseMethod::GridQuadrature);
  for (double v : xi.xi) EXPECT_LE(v, 1e-9);
  EXPECT_THROW(actual_mse(std::span<const AnalyticSignal>(x.data(), 1), grids), ConfigError);
}

TEST(Bound, DominationOnHardySweep) {
  const auto hardy = signals::hardy_pair();
  for (int ex : {1, 6, 7}) {
    for (int L = 11; L <= 51; L += 8) {
      const auto s = preset(ex, L);
      for (const auto& e : error_report(hardy, s.sys, s.rec, 1024)) {
        EXPECT_GE(e.upper_bound, e.averaged_mse);
        EXPECT_GE(e.averaged_mse * e.averaged_mse, e.out_of_band_energy * (1 - 1e-12));
        EXPECT_GE(e.upper_bound, e.actual_mse);
        EXPECT_GT(e.beta_max, 0.0);
      }
    }
  }
}

TEST(Bound, BetaMaxExamples) {
  // Example 1 with 0 in the band: beta_max = 1, attained at n = 0.
  for (int L : {11, 27, 51}) EXPECT_NEAR(preset(1, L).rec.beta_max(), 1.0, 1e-14);
  // Example 5 with the closed-form inverse stays below 20.
  for (int L = 5; L <= 81; L += 4) EXPECT_LE(preset(5, L, true).rec.beta_max(), 20.0);
}

TEST(AveragedMse, ConvergesForHardyInputs) {
  const auto hardy = signals::hardy_pair();
  for (int ex : {1, 7}) {
    const int M = cli::example_outputs(ex);
    const int m0 = M / 2;
    std::vector<double> prev;
    double first = 0.0;
    double last = 0.0;
    for (int K = 10; K <= 60; K += 5) {
      const int L = (2 * K + 1 + m0 - 1) / m0;
      const double alpha = cli::default_alpha(L);
      const auto sys = cli::example_system(ex, alpha);
      const auto plan = make_plan(M, 2, -K, K);
      const auto rec = left_inverse(build_B(sys, plan));
      const auto eps = averaged_mse_exact(hardy, sys, rec, 1024).eps;
      if (!prev.empty()) {
        for (int r = 0; r < 2; ++r) EXPECT_LE(eps[r], 1.05 * prev[r]) << "ex" << ex << " K=" << K;
      } else {
        first = eps[0];
      }
      last = eps[0];
      prev = eps;
    }
    EXPECT_LT(last, 0.1 * first);
  }
}

TEST(Noise, ZeroSigmaIsNoiselessPath) {
  const auto pair = signals::bandlimited_pair();
  const auto s = preset(1, 51);
  const std::vector<SpectrumSignal> x = {pair[0], pair[1]};
  const auto noisy = noisy_reconstruct(s.sys, x, s.rec, {0.0, 5});
  const auto clean = reconstruct_spectra(sample_outputs(s.sys, x, s.plan), s.rec);
  for (int r = 0; r < 2; ++r) EXPECT_EQ(noisy.reconstructed[r], clean[r]);
  EXPECT_THROW(add_noise(SampleGrid::Zero(2, 2), {-1.0, 0}), ConfigError);
}

TEST(Noise, SeedDeterminism) {
  const SampleGrid zero = SampleGrid::Zero(3, 17);
  const auto a = add_noise(zero, {0.1, 99});
  const auto b = add_noise(zero, {0.1, 99});
  const auto c = add_noise(zero, {0.1, 100});
  EXPECT_EQ(testing::max_abs(a - b), 0.0);
  EXPECT_GT(testing::max_abs(a - c), 0.0);
  EXPECT_EQ(a.imag().cwiseAbs().maxCoeff(), 0.0);
  const double var = a.real().array().square().mean();
  EXPECT_NEAR(std::sqrt(var), 0.1, 0.03);
}

TEST(Noise, LinearInSigma) {
  const auto pair = signals::bandlimited_pair();
  const auto s = preset(1, 51);
  const std::vector<SpectrumSignal> x = {pair[0], pair[1]};
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4};
  std::vector<double> sig;
  std::vector<double> y;
  for (int i = 1; i <= 10; ++i) {
    sig.push_back(0.01 * i);
    y.push_back(noisy_error_rms(s.sys, x, s.rec, 0.01 * i, seeds)[0]);
  }
  const auto fit = fit_line(sig, y);
  EXPECT_GE(fit.r_squared, 0.99);
  EXPECT_LE(std::abs(fit.intercept), 1e-6);
}

TEST(Noise, PostFilterAndOversampling) {
  const auto pair = signals::bandlimited_pair();
  const std::vector<SpectrumSignal> x = {pair[0], pair[1]};
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t k = 0; k < 128; ++k) seeds.push_back(1000 + k);
  std::vector<double> prev;
  for (int L : {51, 91, 151}) {
    const auto s = preset(1, L);
    const auto run = noisy_reconstruct(s.sys, x, s.rec, {0.05, 3}, 26);
    for (const auto& sp : run.reconstructed) {
      EXPECT_GE(sp.min_index(), -26);
      EXPECT_LE(sp.max_index(), 26);
    }
    const auto rms = noisy_error_rms(s.sys, x, s.rec, 0.05, seeds, 26);
    if (!prev.empty()) {
      for (int r = 0; r < 2; ++r) EXPECT_LT(rms[r], prev[r]) << L;
    }
    prev = rms;
  }
}

TEST(Fit, ExactLine) {
  const std::vector<double> x = {0, 1, 2, 3};
  const std::vector<double> y = {1, 3, 5, 7};
  const auto fit = fit_line(x, y);
  EXPECT_DOUBLE_EQ(fit.slope, 2.0);
  EXPECT_DOUBLE_EQ(fit.intercept, 1.0);
  EXPECT_DOUBLE_EQ(fit.r_squared, 1.0);
  EXPECT_THROW(fit_line(std::vector<double>{1.0}, std::vector<double>{1.0}), ConfigError);
}

}  // namespace
}  // namespace mimo

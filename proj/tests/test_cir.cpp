#include "cdsxva/cir.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "cdsxva/errors.hpp"
#include "oracles.hpp"

namespace cdsxva {
namespace {

TEST(CirParams, RegimePresets) {
  const CirParams low = regime_params(FactorRegime::kLow);
  EXPECT_EQ(low.zeta, 0.9);
  EXPECT_EQ(low.mu, 0.001);
  EXPECT_EQ(low.sigma, 0.01);
  EXPECT_EQ(low.x0, 0.001);
  const CirParams medium = regime_params(FactorRegime::kMedium);
  EXPECT_EQ(medium.zeta, 0.8);
  EXPECT_EQ(medium.mu, 0.02);
  EXPECT_EQ(medium.sigma, 0.1);
  EXPECT_EQ(medium.x0, 0.02);
  const CirParams high = regime_params(FactorRegime::kHigh);
  EXPECT_EQ(high.zeta, 0.5);
  EXPECT_EQ(high.mu, 0.05);
  EXPECT_EQ(high.sigma, 0.2);
  EXPECT_EQ(high.x0, 0.05);
}

TEST(CirParams, RejectsNegatives) {
  EXPECT_THROW((CirParams{-0.1, 0.0, 0.0, 0.0}).validate(), std::invalid_argument);
  EXPECT_THROW((CirParams{0.1, -1.0, 0.0, 0.0}).validate(), std::invalid_argument);
  EXPECT_THROW((CirParams{0.1, 0.0, -0.2, 0.0}).validate(), std::invalid_argument);
  EXPECT_THROW((CirParams{0.1, 0.0, 0.2, -1e-9}).validate(), std::invalid_argument);
}

TEST(CirMoments, InitialCondition) {
  const CirParams p{0.7, 0.03, 0.15, 0.04};
  const CirMoments m = cir_moments(p, 0.0);
  EXPECT_EQ(m.mean, 0.04);
  EXPECT_EQ(m.variance, 0.0);
}

TEST(CirMoments, DeterministicWhenSigmaZero) {
  const CirParams p{0.7, 0.03, 0.0, 0.04};
  for (double t : {0.5, 1.0, 5.0}) {
    const CirMoments m = cir_moments(p, t);
    EXPECT_EQ(m.variance, 0.0);
    EXPECT_NEAR(m.mean, 0.03 + 0.01 * std::exp(-0.7 * t), 1e-15);
  }
}

// Frozen brute-force oracle: full-truncation Euler with step 1/2000 over
// 4e5 paths for the medium regime at t = 1.
TEST(CirMoments, MatchesBruteForceOracleMediumRegime) {
  const CirMoments m = cir_moments(regime_params(FactorRegime::kMedium), 1.0);
  const double oracle_mean = 1.99883429e-02;  // se 1.58e-05
  const double oracle_var = 9.94233700e-05;
  EXPECT_NEAR(m.mean, oracle_mean, 3.0 * 1.58e-05);
  EXPECT_NEAR(m.variance, oracle_var, 1.5e-06);
}

TEST(SimulateFactors, DegenerateParamsGiveConstantPath) {
  const CirParams constant{0.0, 0.3, 0.0, 0.007};
  const TimeGrid grid(0.0, 2.0, 100);
  const FactorPath path =
      simulate_factors({constant, constant, constant}, grid, 11, 0);
  for (const auto& node : path.values) {
    for (double v : node) EXPECT_EQ(v, 0.007);
  }
}

TEST(SimulateFactors, LowRegimeWithZeroSigmaStaysAtLongRunLevel) {
  CirParams p = regime_params(FactorRegime::kLow);
  p.sigma = 0.0;  // x0 == mu, so the drift vanishes identically
  const TimeGrid grid(0.0, 5.0, 250);
  const FactorPath path = simulate_factors({p, p, p}, grid, 3, 5);
  for (const auto& node : path.values) {
    for (double v : node) EXPECT_EQ(v, 0.001);
  }
}

TEST(SimulateFactors, ValuesStayNonnegativeAndFinite) {
  const std::array<CirParams, 3> params = {
      regime_params(FactorRegime::kLow), regime_params(FactorRegime::kMedium),
      regime_params(FactorRegime::kHigh)};
  const TimeGrid grid(0.0, 5.0, 500);
  for (std::uint64_t p = 0; p < 50; ++p) {
    const FactorPath path = simulate_factors(params, grid, 99, p);
    for (const auto& node : path.values) {
      for (double v : node) {
        ASSERT_TRUE(std::isfinite(v));
        ASSERT_GE(v, 0.0);
      }
    }
  }
}

TEST(SimulateFactors, BitExactReproducibility) {
  const std::array<CirParams, 3> params = {
      regime_params(FactorRegime::kHigh), regime_params(FactorRegime::kMedium),
      regime_params(FactorRegime::kLow)};
  const TimeGrid grid(0.0, 1.0, 250);
  const FactorPath a = simulate_factors(params, grid, 2024, 17);
  const FactorPath b = simulate_factors(params, grid, 2024, 17);
  ASSERT_EQ(a.values.size(), b.values.size());
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    for (int i = 0; i < 3; ++i) ASSERT_EQ(a.values[k][i], b.values[k][i]);
  }
}

// Sample mean at t = 5 vs the closed-form first moment, medium regime.
TEST(SimulateFactors, SampleMeanMatchesClosedFormWithinThreeSe) {
  const CirParams p = regime_params(FactorRegime::kMedium);
  const TimeGrid grid(0.0, 5.0, 250);
  const int n_paths = 100000;
  std::vector<double> terminal(n_paths);
  for (int i = 0; i < n_paths; ++i) {
    const FactorPath path = simulate_factors({p, p, p}, grid, 5150, i);
    terminal[i] = path.values.back()[0];
  }
  const auto [mean, se] = testing::mean_se(terminal);
  const CirMoments m = cir_moments(p, 5.0);
  EXPECT_NEAR(mean, m.mean, 3.0 * se);
}

TEST(SimulateFactors, NonFiniteProposalRaisesSimulationFault) {
  // An absurd state overflows the diffusion term on the first step.
  const CirParams huge{0.0, 0.0, 1e200, 1e200};
  const TimeGrid grid(0.0, 1.0, 10);
  EXPECT_THROW(simulate_factors({huge, huge, huge}, grid, 1, 0),
               SimulationError);
}

TEST(AffineTransform, EmptyIntervalIsOne) {
  const CirParams p = regime_params(FactorRegime::kHigh);
  EXPECT_EQ(affine_transform(p, 0.07, 2.0, 2.0, 0.04), 1.0);
}

TEST(AffineTransform, AbsorbedAtZeroReducesToShiftDiscount) {
  const CirParams p{0.4, 0.0, 0.25, 0.0};
  for (double span : {0.5, 2.0, 5.0}) {
    EXPECT_NEAR(affine_transform(p, 0.03, 1.0, 1.0 + span, 0.0),
                std::exp(-0.03 * span), 1e-14);
  }
}

// Deterministic-ODE oracle for sigma = 0:
// exp(-shift s - mu (s - B) - B x), B = (1 - e^{-zeta s}) / zeta.
TEST(AffineTransform, MatchesDeterministicOracleWhenSigmaZero) {
  const CirParams p{0.8, 0.02, 0.0, 0.05};
  for (double span : {0.25, 1.0, 3.0, 5.0}) {
    const double b = (1.0 - std::exp(-0.8 * span)) / 0.8;
    const double expected = std::exp(-0.01 * span - 0.02 * (span - b) - b * 0.05);
    EXPECT_NEAR(affine_transform(p, 0.01, 0.0, span, 0.05), expected, 1e-12);
  }
}

TEST(AffineTransform, NonincreasingInHorizonShiftAndState) {
  const CirParams p = regime_params(FactorRegime::kMedium);
  double prev = 1.0;
  for (int i = 1; i <= 40; ++i) {
    const double value = affine_transform(p, 0.01, 0.0, 0.25 * i, 0.03);
    ASSERT_LE(value, prev);
    ASSERT_GT(value, 0.0);
    prev = value;
  }
  EXPECT_LE(affine_transform(p, 0.02, 0.0, 3.0, 0.03),
            affine_transform(p, 0.01, 0.0, 3.0, 0.03));
  EXPECT_LE(affine_transform(p, 0.01, 0.0, 3.0, 0.06),
            affine_transform(p, 0.01, 0.0, 3.0, 0.03));
}

TEST(AffineTransform, RejectsBadArguments) {
  const CirParams p = regime_params(FactorRegime::kLow);
  EXPECT_THROW(affine_transform(p, 0.0, 2.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(affine_transform(p, -0.1, 0.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(affine_transform(p, 0.0, 0.0, 1.0, -0.5), std::invalid_argument);
}

// Monte Carlo check of E[exp(-Integral (shift + X))] for the medium regime;
// the three-regime sweep runs in the acceptance suite.
TEST(AffineTransform, AgreesWithMonteCarloMediumRegime) {
  const CirParams p = regime_params(FactorRegime::kMedium);
  const double shift = 0.01;
  const TimeGrid grid(0.0, 5.0, 1250);
  const int n_paths = 10000;
  std::vector<double> at1(n_paths), at3(n_paths), at5(n_paths);
  for (int i = 0; i < n_paths; ++i) {
    const FactorPath path = simulate_factors({p, p, p}, grid, 31337, i);
    double integral = 0.0;
    for (int k = 0; k < grid.n_steps(); ++k) {
      integral += (shift + path.values[k][0]) * grid.step();
      const double t_next = grid.node(k + 1);
      if (t_next == 1.0) at1[i] = std::exp(-integral);
      if (t_next == 3.0) at3[i] = std::exp(-integral);
      if (t_next == 5.0) at5[i] = std::exp(-integral);
    }
  }
  const std::array<std::pair<double, std::vector<double>*>, 3> horizons = {
      {{1.0, &at1}, {3.0, &at3}, {5.0, &at5}}};
  for (const auto& [horizon, samples] : horizons) {
    const auto [mean, se] = testing::mean_se(*samples);
    const double closed = affine_transform(p, shift, 0.0, horizon, p.x0);
    EXPECT_NEAR(closed, mean, 3.0 * se) << "horizon " << horizon;
  }
}

}  // namespace
}  // namespace cdsxva

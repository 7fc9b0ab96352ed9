#include "cdsxva/closeout.hpp"

#include <gtest/gtest.h>

#include <random>

namespace cdsxva {
namespace {

ContractSpec spec_with_recoveries(double r2, double r3) {
  ContractSpec spec;
  spec.spread = 0.01;
  spec.recovery_cpty = r2;
  spec.recovery_inv = r3;
  return spec;
}

// Close-out exposure terms straight from their defining case list; kept
// independent of the production formulas on purpose.
double expected_xi(int group, double s, double lgd, double c, double r2,
                   double r3) {
  const double pos_s = positive_part(s - c), neg_s = negative_part(s - c);
  const double pos_l = positive_part(lgd - c), neg_l = negative_part(lgd - c);
  switch (group) {
    case 1: return 0.0;
    case 2: return (1.0 - r2) * pos_s;
    case 3: return -(1.0 - r3) * neg_s;
    case 4: return (1.0 - r2) * pos_s - (1.0 - r3) * neg_s;
    case 5: return (1.0 - r2) * pos_l;
    case 6: return -(1.0 - r3) * neg_l;
    case 7: return (1.0 - r2) * pos_l - (1.0 - r3) * neg_l;
  }
  return 0.0;
}

TEST(Closeout, FullRecoveriesCollapseToTheCleanFlows) {
  const ContractSpec spec = spec_with_recoveries(1.0, 1.0);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unif(-0.05, 0.05);
  for (int g = 1; g <= 7; ++g) {
    for (int trial = 0; trial < 100; ++trial) {
      const double s = unif(gen), c = unif(gen);
      const CloseoutLeg leg = closeout_cashflow(g, s, 0.6, c, spec);
      ASSERT_EQ(leg.delta_bar, leg.delta_hat);
      ASSERT_EQ(leg.xi, 0.0);
    }
  }
}

TEST(Closeout, CounterpartyAloneExample) {
  const ContractSpec spec = spec_with_recoveries(0.4, 0.4);
  const CloseoutLeg leg = closeout_cashflow(2, 0.02, 0.6, 0.005, spec);
  EXPECT_NEAR(leg.delta_bar, 0.011, 1e-15);
  EXPECT_EQ(leg.delta_hat, 0.02);
  EXPECT_NEAR(leg.xi, 0.009, 1e-15);
}

TEST(Closeout, TripleDefaultExample) {
  const ContractSpec spec = spec_with_recoveries(0.4, 0.4);
  const CloseoutLeg leg = closeout_cashflow(7, 0.0, 0.6, 0.0, spec);
  EXPECT_NEAR(leg.delta_bar, 0.24, 1e-15);
  EXPECT_EQ(leg.delta_hat, 0.6);
  EXPECT_NEAR(leg.xi, 0.36, 1e-15);
}

TEST(Closeout, XiMatchesItsDefiningCaseList) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unif(-0.08, 0.08);
  std::uniform_real_distribution<double> rec(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double s = unif(gen);
    const double c = unif(gen);
    const double lgd = 0.5 + 0.5 * rec(gen);
    const ContractSpec spec = spec_with_recoveries(rec(gen), rec(gen));
    for (int g = 1; g <= 7; ++g) {
      const CloseoutLeg leg = closeout_cashflow(g, s, lgd, c, spec);
      const double xi = expected_xi(g, s, lgd, c, spec.recovery_cpty,
                                    spec.recovery_inv);
      ASSERT_NEAR(leg.xi, xi, 1e-14) << "group " << g;
      ASSERT_NEAR(leg.delta_hat - leg.delta_bar, xi, 1e-14);
    }
  }
}

TEST(Closeout, RejectsBadGroup) {
  const ContractSpec spec = spec_with_recoveries(0.4, 0.4);
  EXPECT_THROW(closeout_cashflow(0, 0.0, 0.6, 0.0, spec), std::invalid_argument);
  EXPECT_THROW(closeout_cashflow(8, 0.0, 0.6, 0.0, spec), std::invalid_argument);
}

TEST(PfeSample, ReferenceAloneIsZero) {
  const ContractSpec spec = spec_with_recoveries(0.4, 0.4);
  const FirstDefault fd{1.7, 1};
  EXPECT_EQ(pfe_sample(fd, 0.02, 0.6, 0.005, spec), 0.0);
}

TEST(PfeSample, CounterpartyAloneExample) {
  const ContractSpec spec = spec_with_recoveries(0.4, 0.4);
  const FirstDefault fd{2.3, 2};
  EXPECT_NEAR(pfe_sample(fd, 0.02, 0.6, 0.005, spec), 0.009, 1e-15);
}

TEST(PfeSample, JointCounterpartyInvestorPositiveSide) {
  const ContractSpec spec = spec_with_recoveries(0.4, 0.8);
  const FirstDefault fd{2.3, 4};
  // s - c > 0: only the counterparty term fires.
  const double pfe = pfe_sample(fd, 0.03, 0.6, 0.01, spec);
  EXPECT_NEAR(pfe, 0.6 * 0.02, 1e-15);
  // s - c < 0: only the investor term fires, with a negative sign.
  const double pfe_neg = pfe_sample(fd, -0.03, 0.6, 0.01, spec);
  EXPECT_NEAR(pfe_neg, -0.2 * 0.04, 1e-15);
}

TEST(PfeSample, EqualsXiForEveryGroup) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> unif(-0.08, 0.08);
  const ContractSpec spec = spec_with_recoveries(0.35, 0.65);
  for (int trial = 0; trial < 2000; ++trial) {
    const double c = unif(gen);
    for (int g = 1; g <= 7; ++g) {
      // The clean mark enters groups 2-4; reference-hit groups use the lgd.
      const double s = unif(gen);
      const FirstDefault fd{1.0, g};
      const double pfe = pfe_sample(fd, s, 0.6, c, spec);
      const double s_for_leg = group_hits_reference(g) ? 0.0 : s;
      const CloseoutLeg leg = closeout_cashflow(g, s_for_leg, 0.6, c, spec);
      ASSERT_NEAR(pfe, leg.xi, 1e-14) << "group " << g;
    }
  }
}

TEST(PfeSample, RequiresADefault) {
  const ContractSpec spec = spec_with_recoveries(0.4, 0.4);
  const FirstDefault none{};
  EXPECT_THROW(pfe_sample(none, 0.0, 0.6, 0.0, spec), std::invalid_argument);
}

}  // namespace
}  // namespace cdsxva

#include "cdsxva/config.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "cdsxva/errors.hpp"

namespace cdsxva {
namespace {

std::string path_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(Config, ParsesAFullDocument) {
  const std::string text = R"json({
    "seed": 421,
    "paths": 500,
    "grid_step": 0.02,
    "quad_step": 0.125,
    "bucket_width": 0.5,
    "contract": {"maturity": 4.0, "spread": 0.0175, "lgd": 0.55,
                 "recovery_cpty": 0.35, "recovery_inv": 0.45, "rate": 0.01},
    "factors": {"reference": "high", "counterparty": "medium",
                "investor": {"zeta": 0.3, "mu": 0.01, "sigma": 0.05, "x0": 0.02}},
    "shocks": {"a": [0.02, 0.02, 0.02], "c": [0.001, 0.001, 0.001, 0.001]},
    "margin": {"gamma_cpty": 0.0015, "gamma_inv": -0.0004, "mta": 0.0001,
               "margin_period": 0.1, "haircut": 0.05, "call_schedule": 0.1},
    "forward_cva": {"outer_paths": 100, "inner_paths": 50, "observation_step": 1.0},
    "cases": [{"label": "X", "gamma_cpty": "unbounded", "gamma_inv": -0.001},
              {"label": "Y", "gamma_cpty": 0.001, "gamma_inv": 0.0}]
  })json";
  const RunConfig cfg = parse_run_config(text);
  const EngineConfig& e = cfg.engine;
  EXPECT_EQ(e.seed, 421u);
  EXPECT_EQ(e.n_paths, 500);
  EXPECT_EQ(e.grid.n_steps(), 200);  // 4.0 / 0.02
  EXPECT_EQ(e.quad_step, 0.125);
  EXPECT_EQ(e.bucket_width, 0.5);
  EXPECT_EQ(e.contract.maturity, 4.0);
  EXPECT_EQ(e.contract.spread, 0.0175);
  EXPECT_FALSE(cfg.spread_is_fair);
  EXPECT_EQ(e.contract.lgd, 0.55);
  EXPECT_EQ(e.contract.rate, 0.01);
  EXPECT_EQ(e.factors[0].sigma, 0.2);   // high preset
  EXPECT_EQ(e.factors[1].sigma, 0.1);   // medium preset
  EXPECT_EQ(e.factors[2].sigma, 0.05);  // explicit parameters
  EXPECT_EQ(e.shocks.c[3], 0.001);
  EXPECT_EQ(e.margin.gamma_cpty, 0.0015);
  EXPECT_EQ(e.margin.mta, 0.0001);
  EXPECT_EQ(e.margin.delta, 0.1);
  EXPECT_EQ(e.margin.haircut, 0.05);
  // Calls every 0.1y on a 0.02y grid: stride 5 -> nodes 5, 10, ..., 195.
  ASSERT_EQ(e.margin.call_times.size(), 39u);
  EXPECT_NEAR(e.margin.call_times.front(), 0.1, 1e-12);
  EXPECT_NEAR(e.margin.call_times.back(), 3.9, 1e-12);
  EXPECT_EQ(e.forward.outer_paths, 100);
  EXPECT_EQ(e.forward.inner_paths, 50);
  ASSERT_EQ(cfg.cases.size(), 2u);
  EXPECT_TRUE(std::isinf(cfg.cases[0].gamma_cpty));
  EXPECT_EQ(cfg.cases[1].gamma_inv, 0.0);
}

TEST(Config, DefaultsAreSensible) {
  const RunConfig cfg = parse_run_config(R"({"seed": 1})");
  const EngineConfig& e = cfg.engine;
  EXPECT_EQ(e.n_paths, 10000);
  EXPECT_EQ(e.grid.n_steps(), 1250);  // 5y at 1/250
  EXPECT_EQ(e.contract.maturity, 5.0);
  EXPECT_EQ(e.contract.lgd, 0.6);
  EXPECT_EQ(e.contract.recovery_cpty, 0.4);
  EXPECT_EQ(e.contract.recovery_inv, 0.4);
  EXPECT_EQ(e.contract.rate, 0.0);
  // Spread defaults to the fair value, resolved at parse time.
  EXPECT_TRUE(cfg.spread_is_fair);
  EXPECT_GT(e.contract.spread, 0.0);
  // All-high factors by default.
  for (int i = 0; i < 3; ++i) EXPECT_EQ(e.factors[i].sigma, 0.2);
  // Unbounded thresholds, calls on every interior node.
  EXPECT_TRUE(std::isinf(e.margin.gamma_cpty));
  EXPECT_TRUE(std::isinf(e.margin.gamma_inv));
  EXPECT_LT(e.margin.gamma_inv, 0.0);
  EXPECT_EQ(e.margin.call_times.size(), 1249u);
  EXPECT_EQ(e.forward.outer_paths, 2000);
  EXPECT_EQ(e.forward.inner_paths, 500);
}

TEST(Config, DefaultCaseTableMatchesTheStandardRegimes) {
  const std::vector<CaseRow> cases = default_case_table();
  ASSERT_EQ(cases.size(), 6u);
  EXPECT_EQ(cases[0].label, "A");
  EXPECT_TRUE(std::isinf(cases[0].gamma_cpty) && cases[0].gamma_cpty > 0);
  EXPECT_TRUE(std::isinf(cases[0].gamma_inv) && cases[0].gamma_inv < 0);
  EXPECT_EQ(cases[1].gamma_cpty, 1.5e-3);
  EXPECT_EQ(cases[1].gamma_inv, -0.4e-3);
  EXPECT_EQ(cases[2].gamma_cpty, 1.0e-3);
  EXPECT_EQ(cases[2].gamma_inv, -0.2e-3);
  EXPECT_EQ(cases[3].gamma_cpty, 0.5e-3);
  EXPECT_EQ(cases[3].gamma_inv, -0.1e-3);
  EXPECT_EQ(cases[4].gamma_cpty, 0.25e-3);
  EXPECT_EQ(cases[4].gamma_inv, -0.05e-3);
  EXPECT_EQ(cases[5].gamma_cpty, 0.0);
  EXPECT_EQ(cases[5].gamma_inv, 0.0);
}

TEST(Config, MissingSeedIsAnError) {
  EXPECT_EQ(path_of([] { parse_run_config(R"({"paths": 100})"); }), "seed");
  // ...unless supplied as an override.
  ConfigOverrides overrides;
  overrides.seed = 7;
  const RunConfig cfg = parse_run_config(R"({"paths": 100})", overrides);
  EXPECT_EQ(cfg.engine.seed, 7u);
}

TEST(Config, ErrorsCarryPrecisePaths) {
  EXPECT_EQ(path_of([] { parse_run_config("{nope"); }), "");
  EXPECT_EQ(path_of([] {
              parse_run_config(R"({"seed": 1, "contract": {"maturity": -1}})");
            }),
            "contract");
  EXPECT_EQ(path_of([] {
              parse_run_config(R"({"seed": 1, "margin": {"gamma_inv": 0.001}})");
            }),
            "margin.gamma_inv");
  EXPECT_EQ(path_of([] {
              parse_run_config(R"({"seed": 1, "margin": {"haircut": 1.5}})");
            }),
            "margin.haircut");
  EXPECT_EQ(path_of([] {
              parse_run_config(R"({"seed": 1, "factors": {"reference": "big"}})");
            }),
            "factors.reference");
  EXPECT_EQ(path_of([] {
              parse_run_config(
                  R"({"seed": 1, "shocks": {"a": [0,0,0], "c": [0.01,0,0,0]}})");
            }),
            "shocks");
  EXPECT_EQ(path_of([] {
              parse_run_config(R"({"seed": 1, "contract": {"spread": "par"}})");
            }),
            "contract.spread");
  EXPECT_EQ(path_of([] { parse_run_config(R"({"seed": 1, "typo": 3})"); }),
            "typo");
  EXPECT_EQ(path_of([] {
              parse_run_config(R"({"seed": 1, "cases": [{"label": "A"}]})");
            }),
            "cases[0]");
  EXPECT_EQ(path_of([] { parse_run_config(R"({"seed": -4})"); }), "seed");
}

TEST(Config, OverridesReplaceDocumentValues) {
  ConfigOverrides overrides;
  overrides.seed = 99;
  overrides.paths = 123;
  overrides.grid_step = 0.05;
  const RunConfig cfg =
      parse_run_config(R"({"seed": 1, "paths": 10, "grid_step": 0.5})", overrides);
  EXPECT_EQ(cfg.engine.seed, 99u);
  EXPECT_EQ(cfg.engine.n_paths, 123);
  EXPECT_EQ(cfg.engine.grid.n_steps(), 100);
}

TEST(Config, FairSpreadResolutionMatchesTheCurve) {
  const RunConfig cfg = parse_run_config(
      R"({"seed": 5, "factors": {"reference": "medium"}, "shocks": {"a": [0.01, 0, 0]}})");
  const CleanCurve curve(cfg.engine.factors[0], 0.01, 0.0,
                         cfg.engine.factors[0].x0, 5.0, 0.0);
  EXPECT_EQ(cfg.engine.contract.spread, fair_spread(curve, cfg.engine.contract));
}

}  // namespace
}  // namespace cdsxva

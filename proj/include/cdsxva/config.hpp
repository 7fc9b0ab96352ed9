#pragma once

// Run configuration: a single JSON document with nested sections, validated
// with precise error paths. Unbounded thresholds are spelled "unbounded",
// never encoded as float sentinels. A seed is mandatory for any run that
// reports numbers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdsxva/engine.hpp"

namespace cdsxva {

struct CaseRow {
  std::string label;
  double gamma_cpty = 0.0;
  double gamma_inv = 0.0;
};

// The standard collateralization regimes, from uncollateralized (A) to fully
// collateralized (F). Thresholds are fractions of the notional.
std::vector<CaseRow> default_case_table();

struct RunConfig {
  EngineConfig engine;
  std::vector<CaseRow> cases = default_case_table();
  bool spread_is_fair = true;  // spread was resolved from the "fair" token
};

// Flag-level overrides applied before resolution (a seed may arrive this way).
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> paths;
  std::optional<double> grid_step;
};

// Throws ConfigError carrying the dotted path of the offending field.
RunConfig parse_run_config(const std::string& json_text,
                           const ConfigOverrides& overrides = {});

RunConfig load_run_config(const std::string& file_path,
                          const ConfigOverrides& overrides = {});

}  // namespace cdsxva

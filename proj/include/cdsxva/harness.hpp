#pragma once

// Experiment orchestration and result emission. All artifacts are pure
// functions of (config, seed); numbers are serialized with 12 significant
// digits and unbounded thresholds as the "unbounded" token.

#include <string>
#include <vector>

#include "cdsxva/config.hpp"
#include "cdsxva/engine.hpp"

namespace cdsxva {

struct PriceResult {
  SpreadReport spread;
  ExposureReport exposure;
};

struct CaseResult {
  CaseRow row;
  ExposureReport exposure;
  Estimate sva0;     // CVA~ / RDV01^C, decimal per year
  Estimate rdv01_c;  // shared across cases under a common seed
};

struct ProfilesResult {
  std::vector<ProfileBucket> buckets;
  std::vector<ForwardCvaPoint> forward;
};

PriceResult run_price(const RunConfig& cfg);

// One engine run per case, all under the config's seed (common random
// numbers), so collateral effects are directly comparable row to row.
std::vector<CaseResult> run_case_table(const RunConfig& cfg);

ProfilesResult run_profiles(const RunConfig& cfg, bool with_forward);

// 12-significant-digit formatting used for every emitted number.
std::string format_sig(double value);
std::string format_threshold(double value);  // +-infinity -> "unbounded"

std::string price_report_json(const PriceResult& result);
std::string case_table_csv(const std::vector<CaseResult>& rows);
std::string profiles_csv(const std::vector<ProfileBucket>& buckets);
std::string forward_cva_csv(const std::vector<ForwardCvaPoint>& curve);

}  // namespace cdsxva

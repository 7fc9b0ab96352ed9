#pragma once

// Monte Carlo engine for bilateral counterparty-risk measures on a CDS under
// a margin agreement: CVA/UCVA/DVA, EPE/ENE/collateral profiles, forward CVA
// by nested simulation, and the counterparty-risky spread with its SVA.
//
// Close-out convention: the simulated state is piecewise constant between
// grid nodes, so the clean mark-to-market and the factor values entering a
// close-out in (t_k, t_{k+1}] are taken at the left node t_k, matching the
// left-continuous collateral. Discounting and the premium annuity use the
// exact default time.

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "cdsxva/clean_cds.hpp"
#include "cdsxva/contract.hpp"
#include "cdsxva/grid.hpp"
#include "cdsxva/margin.hpp"
#include "cdsxva/shocks.hpp"
#include "cdsxva/stats.hpp"

namespace cdsxva {

struct ForwardCvaParams {
  int outer_paths = 2000;
  int inner_paths = 500;
  double observation_step = 0.25;  // snapped to grid nodes
};

struct EngineConfig {
  ContractSpec contract;  // spread already resolved
  std::array<CirParams, 3> factors;
  ShockStructure shocks;
  MarginAgreement margin;
  TimeGrid grid{0.0, 5.0, 1250};
  double quad_step = kDefaultQuadStep;
  double bucket_width = 1.0 / 12.0;
  std::uint64_t seed = 0;
  int n_paths = 10000;
  ForwardCvaParams forward;
};

// Everything the estimators need from one path.
struct PathSample {
  double tau = std::numeric_limits<double>::infinity();
  int group = 0;                                  // 0 = no default before T
  double exposure_pos = 0.0, exposure_neg = 0.0;  // (1-R)(base)^+/-, undiscounted
  double ucva = 0.0, dva = 0.0;                   // discounted exposure parts
  double flow_bar = 0.0, flow_hat = 0.0;          // disc(tau) * close-out flows
  double annuity = 0.0;                           // Integral_0^{tau^T} disc
  double collateral = 0.0;                        // effective collateral at close-out
  double mtm = 0.0;                               // clean MtM used at close-out

  bool defaulted() const { return group != 0; }
};

struct ExposureReport {
  Estimate cva0, ucva0, dva0;  // cva0.value == ucva0.value - dva0.value
  std::uint64_t seed = 0;
  int n_paths = 0;
};

struct SpreadReport {
  double kappa0 = 0.0;      // clean fair spread, quadrature
  Estimate kappa0_c;        // PL^C / RDV01^C
  Estimate sva0;            // kappa0 - kappa0_c (decimal per year)
  Estimate sva0_via_cva;    // CVA~ / RDV01^C, the cross-check route
  Estimate rdv01_c;         // first-default risky annuity (years)
  Estimate pl_c;            // counterparty-risky protection+close-out leg
  Estimate cva_tilde;       // UCVA - DVA on the same paths
  Estimate clean_price_mc;  // MC clean price at kappa0; expectation is 0
  std::uint64_t seed = 0;
  int n_paths = 0;
};

// One time bucket of the exposure profiles. Estimates are present only when
// the corresponding count is positive (empty buckets are absent, not zero).
struct ProfileBucket {
  double time = 0.0;  // bucket end / observation time
  int n_cpty = 0;     // paths with a counterparty default in the bucket
  int n_inv = 0;      // paths with an investor default in the bucket
  int n_alive = 0;    // paths alive at the observation time
  Estimate epe, ene, collateral;
};

struct ForwardCvaPoint {
  double time = 0.0;
  Estimate cva;
};

class Engine {
 public:
  explicit Engine(EngineConfig cfg);

  const EngineConfig& config() const { return cfg_; }
  double kappa0() const { return kappa0_; }
  const CleanPriceTable& price_table() const { return table_; }

  // One path, pure in (seed, path_index).
  PathSample simulate_path(int path_index) const;

  // All n_paths paths; deterministic in (config, seed) and independent of
  // the worker count.
  std::vector<PathSample> run_batch() const;

  ExposureReport exposure_report(const std::vector<PathSample>& batch) const;
  SpreadReport spread_report(const std::vector<PathSample>& batch) const;

  // EPE/ENE and mean-collateral profiles on bucket_width buckets.
  std::vector<ProfileBucket> profile_curves() const;

  // Nested Monte Carlo forward CVA at the configured observation times.
  std::vector<ForwardCvaPoint> forward_cva() const;

  const std::vector<double>& bucket_times() const { return bucket_times_; }

 private:
  template <typename Hook>
  PathSample simulate_core(int path_index, Hook&& hook) const;

  PathSample closeout_sample(int node, double tau, int group, double x1,
                             double collateral_market) const;

  // Discounted net PFE of one inner path restarted from (node k0, x, C).
  double simulate_inner(int k0, const std::array<double, 3>& x, double coll,
                        int outer_path, int obs_index, int inner_index) const;

  EngineConfig cfg_;
  double kappa0_ = 0.0;
  CleanPriceTable table_;
  std::vector<std::uint8_t> call_at_node_;
  std::vector<double> bucket_times_;
  std::vector<int> bucket_node_;  // last grid node at or before bucket time
};

// Net discounted annuity Integral_0^t e^{-r u} du.
inline double discounted_annuity(double rate, double t) {
  return detail::one_minus_exp_over(rate, t);
}

}  // namespace cdsxva

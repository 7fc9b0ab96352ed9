#include "cdsxva/engine.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cdsxva/closeout.hpp"
#include "cdsxva/errors.hpp"
#include "cdsxva/parallel.hpp"
#include "cdsxva/rng.hpp"

namespace cdsxva {

namespace {

EngineConfig validated(EngineConfig cfg) {
  cfg.contract.validate();
  for (const auto& f : cfg.factors) f.validate();
  cfg.shocks.validate();
  cfg.margin.validate(cfg.contract.maturity);
  if (std::abs(cfg.grid.end() - cfg.contract.maturity) > 1e-9) {
    throw ConfigError("grid", "grid must end at the contract maturity");
  }
  if (!(cfg.quad_step > 0.0)) throw ConfigError("quad_step", "must be > 0");
  if (!(cfg.bucket_width > 0.0)) throw ConfigError("bucket_width", "must be > 0");
  if (cfg.n_paths < 1) throw ConfigError("paths", "must be >= 1");
  if (cfg.forward.outer_paths < 1) {
    throw ConfigError("forward_cva.outer_paths", "must be >= 1");
  }
  if (cfg.forward.inner_paths < 1) {
    throw ConfigError("forward_cva.inner_paths", "must be >= 1");
  }
  if (!(cfg.forward.observation_step > 0.0)) {
    throw ConfigError("forward_cva.observation_step", "must be > 0");
  }
  return cfg;
}

}  // namespace

Engine::Engine(EngineConfig cfg)
    : cfg_(validated(std::move(cfg))),
      table_(cfg_.factors[0], cfg_.shocks.a[0], cfg_.contract, cfg_.grid,
             cfg_.quad_step) {
  const CleanCurve curve(cfg_.factors[0], cfg_.shocks.a[0], 0.0,
                         cfg_.factors[0].x0, cfg_.contract.maturity,
                         cfg_.contract.rate, cfg_.quad_step);
  kappa0_ = fair_spread(curve, cfg_.contract);

  // Call times snapped to grid nodes; duplicates collapse onto one node.
  const TimeGrid& grid = cfg_.grid;
  call_at_node_.assign(grid.n_nodes(), 0);
  for (double t : cfg_.margin.call_times) {
    int idx = static_cast<int>(std::llround((t - grid.start()) / grid.step()));
    idx = std::clamp(idx, 1, grid.n_steps() - 1);
    call_at_node_[idx] = 1;
  }

  const double w = cfg_.bucket_width;
  const double maturity = cfg_.contract.maturity;
  const int n_buckets = static_cast<int>(std::ceil(maturity / w - 1e-12));
  bucket_times_.resize(n_buckets);
  bucket_node_.resize(n_buckets);
  for (int b = 0; b < n_buckets; ++b) {
    bucket_times_[b] = std::min((b + 1) * w, maturity);
    bucket_node_[b] = static_cast<int>(
        std::floor((bucket_times_[b] - grid.start()) / grid.step() + 1e-9));
    bucket_node_[b] = std::clamp(bucket_node_[b], 0, grid.n_steps());
  }
}

PathSample Engine::closeout_sample(int node, double tau, int group, double x1,
                                   double collateral_market) const {
  const ContractSpec& spec = cfg_.contract;
  const double s_mtm =
      (group == 2 || group == 3 || group == 4) ? table_.price(node, x1) : 0.0;
  const double c_eff = effective_collateral(collateral_market, cfg_.margin);
  const double base = (group_hits_reference(group) ? spec.lgd : s_mtm) - c_eff;
  const double disc = std::exp(-spec.rate * tau);

  PathSample s;
  s.tau = tau;
  s.group = group;
  s.exposure_pos = group_hits_counterparty(group)
                       ? (1.0 - spec.recovery_cpty) * positive_part(base)
                       : 0.0;
  s.exposure_neg = group_hits_investor(group)
                       ? (1.0 - spec.recovery_inv) * negative_part(base)
                       : 0.0;
  s.ucva = disc * s.exposure_pos;
  s.dva = disc * s.exposure_neg;
  const CloseoutLeg leg =
      closeout_cashflow(group, s_mtm, spec.lgd, c_eff, spec);
  s.flow_bar = disc * leg.delta_bar;
  s.flow_hat = disc * leg.delta_hat;
  s.annuity = discounted_annuity(spec.rate, tau);
  s.collateral = c_eff;
  s.mtm = s_mtm;
  return s;
}

template <typename Hook>
PathSample Engine::simulate_core(int path_index, Hook&& hook) const {
  const TimeGrid& grid = cfg_.grid;
  const double h = grid.step();

  PathRng clock(cfg_.seed, substream_id(kStreamDefaultClock, path_index));
  const double u1 = clock.uniform();
  const double u2 = clock.uniform();
  const double target = -std::log(u1);

  FactorStepper stepper(cfg_.factors, h, cfg_.seed,
                        substream_id(kStreamFactors, path_index));
  MarginState margin_state;
  double cum = 0.0;
  for (int k = 0; k < grid.n_steps(); ++k) {
    const double t_k = grid.node(k);
    const std::array<double, 3>& x = stepper.state();
    if (call_at_node_[k]) {
      margin_state = margin_update(margin_state, cfg_.margin, t_k,
                                   table_.price(k, x[0]));
    }
    hook(k, x, margin_state.collateral);
    const GroupIntensities gi = group_intensities(cfg_.shocks, x);
    const double dh = gi.total * h;
    if (gi.total > 0.0 && cum + dh >= target) {
      const double tau = t_k + (target - cum) / gi.total;
      const int group = draw_default_group(gi, u2);
      return closeout_sample(k, tau, group, x[0], margin_state.collateral);
    }
    cum += dh;
    stepper.step();
  }
  hook(grid.n_steps(), stepper.state(), margin_state.collateral);

  PathSample s;  // survived to maturity
  s.annuity = discounted_annuity(cfg_.contract.rate, grid.end());
  return s;
}

PathSample Engine::simulate_path(int path_index) const {
  return simulate_core(path_index, [](int, const std::array<double, 3>&, double) {});
}

std::vector<PathSample> Engine::run_batch() const {
  std::vector<PathSample> batch(cfg_.n_paths);
  parallel_for(cfg_.n_paths, [&](int p) { batch[p] = simulate_path(p); });
  return batch;
}

ExposureReport Engine::exposure_report(
    const std::vector<PathSample>& batch) const {
  const std::size_t n = batch.size();
  std::vector<double> ucva(n), dva(n), diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    ucva[i] = batch[i].ucva;
    dva[i] = batch[i].dva;
    diff[i] = batch[i].ucva - batch[i].dva;
  }
  ExposureReport rep;
  rep.ucva0 = mean_estimate(ucva);
  rep.dva0 = mean_estimate(dva);
  rep.cva0 = mean_estimate(diff);
  // The headline value keeps the identity CVA = UCVA - DVA exact.
  rep.cva0.value = rep.ucva0.value - rep.dva0.value;
  rep.seed = cfg_.seed;
  rep.n_paths = static_cast<int>(n);
  return rep;
}

SpreadReport Engine::spread_report(const std::vector<PathSample>& batch) const {
  const std::size_t n = batch.size();
  std::vector<double> flow_bar(n), annuity(n), diff(n), clean_flow(n);
  for (std::size_t i = 0; i < n; ++i) {
    flow_bar[i] = batch[i].flow_bar;
    annuity[i] = batch[i].annuity;
    diff[i] = batch[i].ucva - batch[i].dva;
    clean_flow[i] = batch[i].flow_hat - kappa0_ * batch[i].annuity;
  }
  SpreadReport rep;
  rep.kappa0 = kappa0_;
  rep.pl_c = mean_estimate(flow_bar);
  rep.rdv01_c = mean_estimate(annuity);
  rep.kappa0_c = ratio_estimate(flow_bar, annuity);
  rep.sva0 = {kappa0_ - rep.kappa0_c.value, rep.kappa0_c.se};
  rep.sva0_via_cva = ratio_estimate(diff, annuity);
  rep.cva_tilde = mean_estimate(diff);
  rep.clean_price_mc = mean_estimate(clean_flow);
  rep.seed = cfg_.seed;
  rep.n_paths = static_cast<int>(n);
  return rep;
}

std::vector<ProfileBucket> Engine::profile_curves() const {
  const int n_paths = cfg_.n_paths;
  const int n_buckets = static_cast<int>(bucket_times_.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();

  // Per-path collateral at each bucket time while alive; one row per path.
  std::vector<double> coll(static_cast<std::size_t>(n_paths) * n_buckets, nan);
  std::vector<PathSample> batch(n_paths);

  // Bucket observations keyed by the last grid node at or before the bucket
  // time; collateral only changes at call nodes.
  std::vector<int> bucket_of_node(cfg_.grid.n_nodes(), -1);
  for (int b = n_buckets - 1; b >= 0; --b) bucket_of_node[bucket_node_[b]] = b;

  parallel_for(n_paths, [&](int p) {
    double* row = coll.data() + static_cast<std::size_t>(p) * n_buckets;
    batch[p] = simulate_core(
        p, [&](int k, const std::array<double, 3>&, double collateral) {
          int b = bucket_of_node[k];
          while (b >= 0 && b < n_buckets && bucket_node_[b] == k) {
            row[b] = collateral;
            ++b;
          }
        });
    for (int b = 0; b < n_buckets; ++b) {
      if (!(batch[p].tau > bucket_times_[b])) row[b] = nan;
    }
  });

  std::vector<ProfileBucket> buckets(n_buckets);
  std::vector<double> epe_vals, ene_vals, coll_vals;
  // Default-time bucket: tau in (b*w, (b+1)*w].
  auto bucket_of_tau = [&](double tau) {
    int b = static_cast<int>(std::ceil(tau / cfg_.bucket_width - 1e-12)) - 1;
    return std::clamp(b, 0, n_buckets - 1);
  };

  for (int b = 0; b < n_buckets; ++b) {
    ProfileBucket& out = buckets[b];
    out.time = bucket_times_[b];
    epe_vals.clear();
    ene_vals.clear();
    coll_vals.clear();
    for (int p = 0; p < n_paths; ++p) {
      const PathSample& s = batch[p];
      if (s.defaulted() && bucket_of_tau(s.tau) == b) {
        if (group_hits_counterparty(s.group)) epe_vals.push_back(s.exposure_pos);
        if (group_hits_investor(s.group)) ene_vals.push_back(s.exposure_neg);
      }
      const double c = coll[static_cast<std::size_t>(p) * n_buckets + b];
      if (!std::isnan(c)) coll_vals.push_back(c);
    }
    out.n_cpty = static_cast<int>(epe_vals.size());
    out.n_inv = static_cast<int>(ene_vals.size());
    out.n_alive = static_cast<int>(coll_vals.size());
    if (out.n_cpty > 0) out.epe = mean_estimate(epe_vals);
    if (out.n_inv > 0) out.ene = mean_estimate(ene_vals);
    if (out.n_alive > 0) out.collateral = mean_estimate(coll_vals);
  }
  return buckets;
}

double Engine::simulate_inner(int k0, const std::array<double, 3>& x,
                              double coll, int outer_path, int obs_index,
                              int inner_index) const {
  const TimeGrid& grid = cfg_.grid;
  const double h = grid.step();
  const double t0 = grid.node(k0);

  PathRng clock(cfg_.seed, substream_id(kStreamInner, outer_path, obs_index,
                                        2 * static_cast<std::uint64_t>(inner_index)));
  const double u1 = clock.uniform();
  const double u2 = clock.uniform();
  const double target = -std::log(u1);

  FactorStepper stepper(cfg_.factors, h, cfg_.seed,
                        substream_id(kStreamInner, outer_path, obs_index,
                                     2 * static_cast<std::uint64_t>(inner_index) + 1));
  stepper.reset_state(x);
  MarginState margin_state;
  margin_state.collateral = coll;

  double cum = 0.0;
  for (int k = k0; k < grid.n_steps(); ++k) {
    const double t_k = grid.node(k);
    const std::array<double, 3>& state = stepper.state();
    // The call at the restart node is already reflected in coll.
    if (k > k0 && call_at_node_[k]) {
      margin_state = margin_update(margin_state, cfg_.margin, t_k,
                                   table_.price(k, state[0]));
    }
    const GroupIntensities gi = group_intensities(cfg_.shocks, state);
    const double dh = gi.total * h;
    if (gi.total > 0.0 && cum + dh >= target) {
      const double tau = t_k + (target - cum) / gi.total;
      const int group = draw_default_group(gi, u2);
      PathSample s =
          closeout_sample(k, tau, group, state[0], margin_state.collateral);
      // Value as of t0.
      return std::exp(cfg_.contract.rate * t0) * (s.ucva - s.dva);
    }
    cum += dh;
    stepper.step();
  }
  return 0.0;
}

std::vector<ForwardCvaPoint> Engine::forward_cva() const {
  const TimeGrid& grid = cfg_.grid;
  const int obs_stride = std::max(
      1, static_cast<int>(std::llround(cfg_.forward.observation_step / grid.step())));
  std::vector<int> obs_nodes;
  for (int k = 0; k < grid.n_steps(); k += obs_stride) obs_nodes.push_back(k);
  obs_nodes.push_back(grid.n_steps());
  const int n_obs = static_cast<int>(obs_nodes.size());

  std::vector<int> obs_of_node(grid.n_nodes(), -1);
  for (int o = 0; o < n_obs; ++o) obs_of_node[obs_nodes[o]] = o;

  struct OuterRecord {
    std::vector<std::array<double, 3>> x;
    std::vector<double> coll;
    double tau = std::numeric_limits<double>::infinity();
  };

  const int n_outer = cfg_.forward.outer_paths;
  std::vector<OuterRecord> recs(n_outer);
  parallel_for(n_outer, [&](int p) {
    OuterRecord rec;
    rec.x.resize(n_obs);
    rec.coll.resize(n_obs, 0.0);
    const PathSample s = simulate_core(
        p, [&](int k, const std::array<double, 3>& x, double collateral) {
          const int o = obs_of_node[k];
          if (o >= 0) {
            rec.x[o] = x;
            rec.coll[o] = collateral;
          }
        });
    rec.tau = s.tau;
    recs[p] = std::move(rec);
  });

  // Inner estimates per (observation, outer path); the last observation is
  // maturity, where the forward CVA is identically zero.
  std::vector<double> estimates(static_cast<std::size_t>(n_obs - 1) * n_outer, 0.0);
  parallel_for((n_obs - 1) * n_outer, [&](int idx) {
    const int o = idx / n_outer;
    const int p = idx % n_outer;
    const OuterRecord& rec = recs[p];
    const double t_o = grid.node(obs_nodes[o]);
    if (!(rec.tau > t_o)) return;  // dead path: CVA path value is 0
    KahanAccumulator acc;
    for (int j = 0; j < cfg_.forward.inner_paths; ++j) {
      acc.add(simulate_inner(obs_nodes[o], rec.x[o], rec.coll[o], p, o, j));
    }
    estimates[idx] = acc.sum() / cfg_.forward.inner_paths;
  });

  std::vector<ForwardCvaPoint> curve(n_obs);
  for (int o = 0; o < n_obs; ++o) {
    curve[o].time = grid.node(obs_nodes[o]);
    if (o == n_obs - 1) {
      curve[o].cva = {0.0, 0.0};
      continue;
    }
    const std::span<const double> column(
        estimates.data() + static_cast<std::size_t>(o) * n_outer,
        static_cast<std::size_t>(n_outer));
    curve[o].cva = mean_estimate(column);
  }
  return curve;
}

}  // namespace cdsxva

#include "cdsxva/margin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cdsxva/errors.hpp"

namespace cdsxva {

void MarginAgreement::validate(double maturity) const {
  if (!(gamma_cpty >= 0.0)) {
    throw ConfigError("margin.gamma_cpty", "must be >= 0 (or unbounded)");
  }
  if (!(gamma_inv <= 0.0)) {
    throw ConfigError("margin.gamma_inv", "must be <= 0 (or unbounded)");
  }
  if (!(mta >= 0.0)) throw ConfigError("margin.mta", "must be >= 0");
  if (!(delta >= 0.0)) throw ConfigError("margin.margin_period", "must be >= 0");
  if (!(haircut >= 0.0 && haircut < 1.0)) {
    throw ConfigError("margin.haircut", "must be in [0, 1)");
  }
  double prev = 0.0;
  for (double t : call_times) {
    if (!(t > prev)) {
      throw ConfigError("margin.call_times",
                        "must be strictly increasing and > 0");
    }
    if (!(t < maturity)) {
      throw ConfigError("margin.call_times", "must lie inside (0, maturity)");
    }
    prev = t;
  }
}

MarginState margin_update(const MarginState& state,
                          const MarginAgreement& agreement, double call_time,
                          double clean_mtm) {
  if (state.frozen_at && call_time >= *state.frozen_at) {
    throw StateError("margin_update: account is frozen");
  }
  MarginState next = state;
  next.last_update = call_time;
  // A triggered account lands exactly on the threshold gap: C = s - Gamma.
  const double gap_cpty = clean_mtm - agreement.gamma_cpty - state.collateral;
  if (gap_cpty > agreement.mta) {
    next.collateral = clean_mtm - agreement.gamma_cpty;
    return next;
  }
  const double gap_inv = clean_mtm - agreement.gamma_inv - state.collateral;
  if (gap_inv < -agreement.mta) {
    next.collateral = clean_mtm - agreement.gamma_inv;
  }
  return next;
}

double effective_collateral(double market_value,
                            const MarginAgreement& agreement) {
  if (!(agreement.haircut >= 0.0 && agreement.haircut < 1.0)) {
    throw ConfigError("margin.haircut", "must be in [0, 1)");
  }
  return (1.0 - agreement.haircut) * market_value;
}

MarginAccount::MarginAccount(MarginAgreement agreement)
    : agreement_(std::move(agreement)) {}

void MarginAccount::update(double call_time, double clean_mtm) {
  const MarginState next = margin_update(state_, agreement_, call_time, clean_mtm);
  if (next.collateral != state_.collateral) {
    history_.emplace_back(call_time, next.collateral);
  }
  state_ = next;
}

void MarginAccount::freeze(double tau_hat) {
  state_.frozen_at = tau_hat;
}

double MarginAccount::collateral_at(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("collateral_at: t must be >= 0");
  // Only calls strictly before min(t, tau_hat) are visible at t; the account
  // holds its frozen value throughout (tau_hat, tau_hat + delta) and after.
  double cutoff = t;
  if (state_.frozen_at) cutoff = std::min(cutoff, *state_.frozen_at);
  double value = 0.0;
  for (const auto& [time, post] : history_) {
    if (time >= cutoff) break;
    value = post;
  }
  return value;
}

}  // namespace cdsxva

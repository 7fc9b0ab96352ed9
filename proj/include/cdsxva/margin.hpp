#pragma once

// Bilateral margin account: threshold/MTA-gated collateral updates on a call
// schedule, freezing over the margin period of risk, haircut valuation.
// Collateral is left-continuous and piecewise constant: the amount set at a
// call time t_i prevails on (t_i, t_{i+1}].

#include <limits>
#include <optional>
#include <vector>

namespace cdsxva {

struct MarginAgreement {
  // Counterparty threshold (>= 0, +infinity disables the counterparty gate).
  double gamma_cpty = std::numeric_limits<double>::infinity();
  // Investor threshold (<= 0, -infinity disables the investor gate).
  double gamma_inv = -std::numeric_limits<double>::infinity();
  double mta = 0.0;      // minimum transfer amount, >= 0
  double delta = 0.0;    // margin period of risk in years, >= 0
  double haircut = 0.0;  // h in [0, 1); effective value is (1-h) * market
  std::vector<double> call_times;  // strictly increasing, inside (0, T)

  void validate(double maturity) const;  // throws ConfigError
};

struct MarginState {
  double collateral = 0.0;          // C, market value; C_0 = 0
  double last_update = 0.0;         // most recent executed call time
  std::optional<double> frozen_at;  // tau_hat once the account froze
};

// One margin call at time call_time against clean mark-to-market s:
//   dC = (s - G_cpty - C) 1{s - G_cpty - C > MTA}
//      + (s - G_inv  - C) 1{s - G_inv  - C < -MTA}.
// At most one gate can fire since G_cpty >= 0 >= G_inv. Any nonzero
// increment therefore exceeds MTA in magnitude. Throws StateError if the
// account froze at or before call_time.
MarginState margin_update(const MarginState& state,
                          const MarginAgreement& agreement, double call_time,
                          double clean_mtm);

// Credit support usable at close-out under the valuation-percentage
// convention: (1 - h) * market value.
double effective_collateral(double market_value,
                            const MarginAgreement& agreement);

// Margin account with its executed-call history, so the collateral value can
// be queried at any time, including inside the margin period of risk.
class MarginAccount {
 public:
  explicit MarginAccount(MarginAgreement agreement);

  // Applies the call at call_time. Calls at or after the freeze throw.
  void update(double call_time, double clean_mtm);

  // Freezes the account at tau_hat (first counterparty/investor default).
  void freeze(double tau_hat);

  // Left-continuous value at t: the amount posted at the last executed call
  // strictly before t, zero before the first call. On (tau_hat,
  // tau_hat + delta) the value stays at C_{tau_hat}.
  double collateral_at(double t) const;

  // Current (latest) market value of the account.
  double current() const { return state_.collateral; }

  // Current value after the haircut.
  double current_effective() const {
    return effective_collateral(state_.collateral, agreement_);
  }

  const MarginState& state() const { return state_; }
  const MarginAgreement& agreement() const { return agreement_; }

 private:
  MarginAgreement agreement_;
  MarginState state_;
  std::vector<std::pair<double, double>> history_;  // (call time, post value)
};

}  // namespace cdsxva

#pragma once

#include <stdexcept>

namespace cdsxva {

// Economic terms of the CDS trade, unit notional, seen from the protection
// buyer (the investor).
struct ContractSpec {
  double maturity = 5.0;       // T (years)
  double spread = 0.0;         // running spread kappa (decimal per year)
  double lgd = 0.6;            // reference loss given default, delta^1
  double recovery_cpty = 0.4;  // R2: recovery on counterparty close-out
  double recovery_inv = 0.4;   // R3: recovery on investor close-out
  double rate = 0.0;           // deterministic short rate r

  void validate() const {
    if (!(maturity > 0.0)) {
      throw std::invalid_argument("ContractSpec: maturity must be > 0");
    }
    if (!(lgd >= 0.0 && lgd <= 1.0)) {
      throw std::invalid_argument("ContractSpec: lgd must be in [0,1]");
    }
    if (!(recovery_cpty >= 0.0 && recovery_cpty <= 1.0)) {
      throw std::invalid_argument("ContractSpec: recovery_cpty must be in [0,1]");
    }
    if (!(recovery_inv >= 0.0 && recovery_inv <= 1.0)) {
      throw std::invalid_argument("ContractSpec: recovery_inv must be in [0,1]");
    }
    if (!(spread >= 0.0)) {
      throw std::invalid_argument("ContractSpec: spread must be >= 0");
    }
  }
};

// Upfront conversion: UP = (kappa0 - kappa_fixed) * dv01.
inline double upfront_from_spread(double kappa0, double kappa_fixed,
                                  double dv01) {
  if (!(dv01 > 0.0)) {
    throw std::invalid_argument("upfront_from_spread: dv01 must be > 0");
  }
  return (kappa0 - kappa_fixed) * dv01;
}

inline double spread_from_upfront(double upfront, double kappa_fixed,
                                  double dv01) {
  if (!(dv01 > 0.0)) {
    throw std::invalid_argument("spread_from_upfront: dv01 must be > 0");
  }
  return upfront / dv01 + kappa_fixed;
}

}  // namespace cdsxva

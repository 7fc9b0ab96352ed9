#pragma once

// Counterparty-risk-free ("clean") CDS pricing off the closed-form survival
// curve of the reference name. The premium leg accrues continuously; the
// protection leg pays lgd at the reference default.

#include <vector>

#include "cdsxva/cir.hpp"
#include "cdsxva/contract.hpp"
#include "cdsxva/grid.hpp"

namespace cdsxva {

inline constexpr double kDefaultQuadStep = 1.0 / 12.0;  // monthly nodes

// Survival curve P(t, u) = Q(tau_1 > u | X^1_t = x) and the discount function
// exp(-r (u - t)), sampled on a quadrature grid over [t, T]. Immutable.
class CleanCurve {
 public:
  CleanCurve(const CirParams& factor, double a1, double t, double x,
             double maturity, double rate,
             double quad_step = kDefaultQuadStep);

  double eval_time() const { return t_; }
  double maturity() const { return maturity_; }
  double rate() const { return rate_; }

  double survival(double u) const;  // closed form, u >= t
  double discount(double u) const { return std::exp(-rate_ * (u - t_)); }

  // Quadrature layout: nodes_[j] in [t, T], even interval count, Simpson
  // weights already folded into weights_[j].
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& node_survival() const { return survival_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  CirParams factor_;
  double a1_;
  double t_;
  double x_;
  double maturity_;
  double rate_;
  std::vector<double> nodes_;
  std::vector<double> survival_;
  std::vector<double> weights_;
};

// Value of the protection leg per unit notional, in [0, lgd].
double protection_leg(const CleanCurve& curve, const ContractSpec& spec);

// Risky annuity RDV01 in years, in (0, T - t].
double risky_annuity(const CleanCurve& curve, const ContractSpec& spec);

// Pre-default ex-dividend value S~ = PL - kappa * RDV01.
double clean_price(const CleanCurve& curve, const ContractSpec& spec);

// Spread that zeroes the clean price; throws PricingError when RDV01 is 0.
double fair_spread(const CleanCurve& curve, const ContractSpec& spec);

// Tabulated clean prices S~(t_k, x) on the simulation grid, cubic in the
// factor value. Exposure and margin calls evaluate this millions of times
// per run; entries beyond the tabulated factor range fall back to the exact
// quadrature. Build cost is one quadrature per (node, x) pair.
class CleanPriceTable {
 public:
  CleanPriceTable(const CirParams& factor, double a1, const ContractSpec& spec,
                  const TimeGrid& grid, double quad_step = kDefaultQuadStep);

  // S~ at grid node k and factor value x >= 0.
  double price(int node, double x) const;

  // Exact quadrature price at an arbitrary time (test/fallback path).
  double price_exact(double t, double x) const;

  double x_max() const { return x_max_; }

 private:
  CirParams factor_;
  double a1_;
  ContractSpec spec_;
  TimeGrid grid_;
  double quad_step_;
  double x_max_;
  double dx_;
  int n_x_;
  std::vector<double> values_;  // [node * n_x_ + j]
};

}  // namespace cdsxva

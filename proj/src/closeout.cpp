#include "cdsxva/closeout.hpp"

#include <stdexcept>

namespace cdsxva {

CloseoutLeg closeout_cashflow(int group, double s, double lgd, double c,
                              const ContractSpec& spec) {
  if (group < 1 || group > 7) {
    throw std::invalid_argument("closeout_cashflow: group must be in 1..7");
  }
  const double loss_cpty = 1.0 - spec.recovery_cpty;  // 1 - R2
  const double loss_inv = 1.0 - spec.recovery_inv;    // 1 - R3

  CloseoutLeg leg;
  leg.group = group;
  switch (group) {
    case 1:
      leg.delta_bar = lgd;
      leg.delta_hat = lgd;
      break;
    case 2:
      leg.delta_bar = s - loss_cpty * positive_part(s - c);
      leg.delta_hat = s;
      break;
    case 3:
      leg.delta_bar = s + loss_inv * negative_part(s - c);
      leg.delta_hat = s;
      break;
    case 4:
      leg.delta_bar = s - loss_cpty * positive_part(s - c) +
                      loss_inv * negative_part(s - c);
      leg.delta_hat = s;
      break;
    case 5:
      leg.delta_bar = lgd - loss_cpty * positive_part(lgd - c);
      leg.delta_hat = lgd;
      break;
    case 6:
      leg.delta_bar = lgd + loss_inv * negative_part(lgd - c);
      leg.delta_hat = lgd;
      break;
    case 7:
      leg.delta_bar = lgd - loss_cpty * positive_part(lgd - c) +
                      loss_inv * negative_part(lgd - c);
      leg.delta_hat = lgd;
      break;
  }
  leg.xi = leg.delta_hat - leg.delta_bar;
  return leg;
}

double pfe_sample(const FirstDefault& fd, double s, double lgd, double c,
                  const ContractSpec& spec) {
  if (!fd.occurred()) {
    throw std::invalid_argument("pfe_sample: path has no default");
  }
  const int g = fd.group;
  // Ex-dividend clean value is zero once the reference name has defaulted.
  const double base = (group_hits_reference(g) ? lgd : s) - c;
  double value = 0.0;
  if (group_hits_counterparty(g)) {
    value += (1.0 - spec.recovery_cpty) * positive_part(base);
  }
  if (group_hits_investor(g)) {
    value -= (1.0 - spec.recovery_inv) * negative_part(base);
  }
  return value;
}

}  // namespace cdsxva

#pragma once

// Close-out cash flows at the first default, per default group. Three
// equivalent books are kept:
//   delta_bar: actual flow of the counterparty-risky contract,
//   delta_hat: flow of the clean contract in the same representation,
//   xi = delta_hat - delta_bar: the exposure lost/gained at close-out.
// The clean mark-to-market S enters groups 2-4 only; when the reference name
// is part of the default (groups 1, 5-7) the surviving claim is the recovery
// amount lgd, the ex-dividend clean value being zero at that instant.

#include "cdsxva/contract.hpp"
#include "cdsxva/shocks.hpp"

namespace cdsxva {

struct CloseoutLeg {
  int group = 0;
  double delta_bar = 0.0;
  double delta_hat = 0.0;
  double xi = 0.0;
};

// s: clean mark-to-market at the default time; c: effective collateral.
CloseoutLeg closeout_cashflow(int group, double s, double lgd, double c,
                              const ContractSpec& spec);

// Signed potential future exposure sample:
//   1{tau2 hit} (1-R2) (base)^+  -  1{tau3 hit} (1-R3) (base)^-,
// base = (S + 1{tau1 hit} lgd) - c with S = 0 on reference-hit groups.
double pfe_sample(const FirstDefault& fd, double s, double lgd, double c,
                  const ContractSpec& spec);

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }
// Negative part with x = x^+ - x^-; always >= 0.
inline double negative_part(double x) { return x < 0.0 ? -x : 0.0; }

}  // namespace cdsxva

#pragma once

// Common-shock default model for the three names of a CDS trade: reference
// (1), counterparty (2), investor (3). Seven default groups cover every
// first-default pattern:
//   1: reference alone          5: reference = counterparty
//   2: counterparty alone       6: reference = investor
//   3: investor alone           7: all three together
//   4: counterparty = investor
// Group intensities l^1..l^7 combine affine marginal parts a_i + X^i with
// constant common-shock intensities c4..c7 so that the marginal intensities
// stay exactly a_i + X^i.

#include <array>
#include <limits>

#include "cdsxva/cir.hpp"

namespace cdsxva {

struct ShockStructure {
  std::array<double, 3> a{0.0, 0.0, 0.0};       // marginal constants (1/year)
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};  // c4, c5, c6, c7 (1/year)

  // Throws ConfigError unless a_i is large enough to keep every group
  // intensity nonnegative for all X >= 0.
  void validate() const;

  // Factor-independent part of the total first-default intensity.
  double total_const_part() const {
    return a[0] + a[1] + a[2] - c[0] - c[1] - c[2] - 2.0 * c[3];
  }
};

struct GroupIntensities {
  std::array<double, 7> l{};  // l[g-1] is the group-g intensity
  double total = 0.0;
};

GroupIntensities group_intensities(const ShockStructure& shocks,
                                   const std::array<double, 3>& x);

constexpr bool group_hits_reference(int g) {
  return g == 1 || g == 5 || g == 6 || g == 7;
}
constexpr bool group_hits_counterparty(int g) {
  return g == 2 || g == 4 || g == 5 || g == 7;
}
constexpr bool group_hits_investor(int g) {
  return g == 3 || g == 4 || g == 6 || g == 7;
}

// First default before the horizon, if any. group == 0 means no default, in
// which case time is +infinity.
struct FirstDefault {
  double time = std::numeric_limits<double>::infinity();
  int group = 0;

  bool occurred() const { return group != 0; }
};

// Categorical draw over the seven groups with weights l^i / l.
int draw_default_group(const GroupIntensities& gi, double u2);

// Inverse-transform sampling of the first default: the total intensity is
// piecewise constant between grid nodes (left-node value), the default time
// solves Integral l du = -log(u1), and the group is drawn categorically with
// weights l^i/l at the default node using u2.
FirstDefault sample_first_default(const FactorPath& path,
                                  const ShockStructure& shocks, double horizon,
                                  double u1, double u2);

enum class SurvivalKind {
  kMarginal1,
  kMarginal2,
  kMarginal3,
  kFirstToDefault,
};

// Closed-form survival probabilities conditional on the factor values x at
// time t. Marginal i uses intensity a_i + X^i; first-to-default uses the
// total group intensity.
double survival(const ShockStructure& shocks,
                const std::array<CirParams, 3>& params, SurvivalKind kind,
                double t, double horizon, const std::array<double, 3>& x);

}  // namespace cdsxva

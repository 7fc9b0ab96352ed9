#include "cdsxva/shocks.hpp"

#include <cmath>
#include <stdexcept>

#include "cdsxva/errors.hpp"

namespace cdsxva {

void ShockStructure::validate() const {
  for (double v : a) {
    if (!(v >= 0.0)) throw ConfigError("shocks.a", "entries must be >= 0");
  }
  for (double v : c) {
    if (!(v >= 0.0)) throw ConfigError("shocks.c", "entries must be >= 0");
  }
  // c indices: c[0]=c4, c[1]=c5, c[2]=c6, c[3]=c7.
  if (a[0] < c[1] + c[2] + c[3]) {
    throw ConfigError("shocks", "need a1 >= c5 + c6 + c7");
  }
  if (a[1] < c[0] + c[1] + c[3]) {
    throw ConfigError("shocks", "need a2 >= c4 + c5 + c7");
  }
  if (a[2] < c[0] + c[2] + c[3]) {
    throw ConfigError("shocks", "need a3 >= c4 + c6 + c7");
  }
}

GroupIntensities group_intensities(const ShockStructure& shocks,
                                   const std::array<double, 3>& x) {
  for (double v : x) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("group_intensities: x must be >= 0");
    }
  }
  const auto& a = shocks.a;
  const auto& c = shocks.c;
  GroupIntensities gi;
  gi.l[0] = a[0] + x[0] - (c[1] + c[2] + c[3]);
  gi.l[1] = a[1] + x[1] - (c[0] + c[1] + c[3]);
  gi.l[2] = a[2] + x[2] - (c[0] + c[2] + c[3]);
  gi.l[3] = c[0];
  gi.l[4] = c[1];
  gi.l[5] = c[2];
  gi.l[6] = c[3];
  double total = 0.0;
  for (double v : gi.l) total += v;
  gi.total = total;
  return gi;
}

int draw_default_group(const GroupIntensities& gi, double u2) {
  const double mark = u2 * gi.total;
  double acc = 0.0;
  int last_positive = 0;
  for (int g = 0; g < 7; ++g) {
    if (gi.l[g] <= 0.0) continue;
    acc += gi.l[g];
    last_positive = g + 1;
    if (mark <= acc) break;
  }
  return last_positive;
}

FirstDefault sample_first_default(const FactorPath& path,
                                  const ShockStructure& shocks, double horizon,
                                  double u1, double u2) {
  shocks.validate();
  const TimeGrid& grid = path.grid;
  if (horizon > grid.end() + 1e-12) {
    throw std::invalid_argument("sample_first_default: horizon beyond path end");
  }
  const double target = -std::log(u1);
  const double step = grid.step();
  double cum = 0.0;
  for (int k = 0; k < grid.n_steps(); ++k) {
    const double t_left = grid.node(k);
    if (t_left >= horizon) break;
    // Whole steps except possibly a capped final interval at the horizon.
    const double dt =
        grid.node(k + 1) > horizon ? horizon - t_left : step;
    const GroupIntensities gi = group_intensities(shocks, path.values[k]);
    const double dh = gi.total * dt;
    if (gi.total > 0.0 && cum + dh >= target) {
      FirstDefault fd;
      fd.time = t_left + (target - cum) / gi.total;
      // Group drawn at the prevailing (left-node) state.
      fd.group = draw_default_group(gi, u2);
      return fd;
    }
    cum += dh;
  }
  return {};
}

double survival(const ShockStructure& shocks,
                const std::array<CirParams, 3>& params, SurvivalKind kind,
                double t, double horizon, const std::array<double, 3>& x) {
  shocks.validate();
  if (horizon < t) throw std::invalid_argument("survival: horizon < t");
  const double s = horizon - t;
  switch (kind) {
    case SurvivalKind::kMarginal1:
      return std::exp(-shocks.a[0] * s) *
             affine_transform(params[0], 0.0, t, horizon, x[0]);
    case SurvivalKind::kMarginal2:
      return std::exp(-shocks.a[1] * s) *
             affine_transform(params[1], 0.0, t, horizon, x[1]);
    case SurvivalKind::kMarginal3:
      return std::exp(-shocks.a[2] * s) *
             affine_transform(params[2], 0.0, t, horizon, x[2]);
    case SurvivalKind::kFirstToDefault: {
      double value = std::exp(-shocks.total_const_part() * s);
      for (int i = 0; i < 3; ++i) {
        value *= affine_transform(params[i], 0.0, t, horizon, x[i]);
      }
      return value;
    }
  }
  throw std::invalid_argument("survival: unknown kind");
}

}  // namespace cdsxva

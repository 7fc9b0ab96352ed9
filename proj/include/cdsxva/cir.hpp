#pragma once

// Square-root diffusion factors driving the default intensities, plus the
// exponential-affine transform that gives survival probabilities in closed
// form.

#include <array>
#include <cstdint>
#include <vector>

#include "cdsxva/grid.hpp"
#include "cdsxva/rng.hpp"

namespace cdsxva {

// Parameters of dX = zeta*(mu - X) dt + sigma*sqrt(X) dW, X_0 = x0.
struct CirParams {
  double zeta = 0.0;   // mean-reversion speed (1/year)
  double mu = 0.0;     // long-run level (1/year)
  double sigma = 0.0;  // volatility of sqrt(X)
  double x0 = 0.0;     // initial value (1/year)

  void validate() const;  // throws std::invalid_argument
};

enum class FactorRegime { kLow, kMedium, kHigh };

// Preset credit-risk levels.
CirParams regime_params(FactorRegime regime);

struct CirMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Exact first two moments of X_t.
CirMoments cir_moments(const CirParams& params, double t);

// E[ exp(-Integral_t^horizon (shift + X_s) ds) | X_t = x ], the standard CIR
// Riccati closed form. Value in (0, 1]; nonincreasing in x, shift, horizon.
double affine_transform(const CirParams& params, double shift, double t,
                        double horizon, double x);

// Joint path of the three independent factors on a grid. values[k][i] is
// factor i at node k; every entry is >= 0 and finite.
struct FactorPath {
  TimeGrid grid;
  std::vector<std::array<double, 3>> values;
};

// Full-truncation Euler stepper for the three factors. Consumes exactly
// three normals per step, in factor order, from its own stream, so that a
// path is a pure function of (seed, path-level stream id).
class FactorStepper {
 public:
  FactorStepper(const std::array<CirParams, 3>& params, double step,
                std::uint64_t seed, std::uint64_t stream)
      : params_(params),
        step_(step),
        sqrt_step_(std::sqrt(step)),
        rng_(seed, stream) {
    for (int i = 0; i < 3; ++i) state_[i] = params_[i].x0;
  }

  // Restart from an arbitrary nonnegative state (nested simulation).
  void reset_state(const std::array<double, 3>& x) { state_ = x; }

  const std::array<double, 3>& state() const { return state_; }

  void step();  // throws SimulationError on a non-finite draw

 private:
  std::array<CirParams, 3> params_;
  double step_;
  double sqrt_step_;
  PathRng rng_;
  std::array<double, 3> state_{};
};

// One joint factor path, deterministic in (seed, path_index).
FactorPath simulate_factors(const std::array<CirParams, 3>& params,
                            const TimeGrid& grid, std::uint64_t seed,
                            std::uint64_t path_index);

namespace detail {
// (1 - exp(-z*t)) / z, continuous at z = 0.
inline double one_minus_exp_over(double z, double t) {
  if (z == 0.0) return t;
  return -std::expm1(-z * t) / z;
}
}  // namespace detail

}  // namespace cdsxva

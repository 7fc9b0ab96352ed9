#include "cdsxva/cir.hpp"

#include <cmath>
#include <stdexcept>

#include "cdsxva/errors.hpp"

namespace cdsxva {

void CirParams::validate() const {
  if (!(zeta >= 0.0)) throw std::invalid_argument("CirParams: zeta must be >= 0");
  if (!(mu >= 0.0)) throw std::invalid_argument("CirParams: mu must be >= 0");
  if (!(sigma >= 0.0)) throw std::invalid_argument("CirParams: sigma must be >= 0");
  if (!(x0 >= 0.0)) throw std::invalid_argument("CirParams: x0 must be >= 0");
}

CirParams regime_params(FactorRegime regime) {
  switch (regime) {
    case FactorRegime::kLow:
      return {0.9, 0.001, 0.01, 0.001};
    case FactorRegime::kMedium:
      return {0.8, 0.02, 0.1, 0.02};
    case FactorRegime::kHigh:
      return {0.5, 0.05, 0.2, 0.05};
  }
  throw std::invalid_argument("unknown factor regime");
}

CirMoments cir_moments(const CirParams& params, double t) {
  params.validate();
  if (!(t >= 0.0)) throw std::invalid_argument("cir_moments: t must be >= 0");
  const double e = std::exp(-params.zeta * t);
  const double mean = params.mu + (params.x0 - params.mu) * e;
  const double sig2 = params.sigma * params.sigma;
  // Var = x0*sig^2/zeta*(e^{-zt} - e^{-2zt}) + mu*sig^2/(2 zeta)*(1-e^{-zt})^2,
  // written through (1-e^{-zt})/zeta to stay finite as zeta -> 0.
  const double omega = detail::one_minus_exp_over(params.zeta, t);
  const double variance =
      params.x0 * sig2 * e * omega + 0.5 * params.mu * sig2 * params.zeta * omega * omega;
  return {mean, variance};
}

double affine_transform(const CirParams& params, double shift, double t,
                        double horizon, double x) {
  params.validate();
  if (horizon < t) {
    throw std::invalid_argument("affine_transform: horizon < t");
  }
  if (!(x >= 0.0)) throw std::invalid_argument("affine_transform: x must be >= 0");
  if (!(shift >= 0.0)) {
    throw std::invalid_argument("affine_transform: shift must be >= 0");
  }
  const double s = horizon - t;
  if (s == 0.0) return 1.0;

  double log_value = -shift * s;
  if (params.sigma == 0.0) {
    // Deterministic factor: X_u = mu + (x - mu) e^{-zeta u}.
    const double b = detail::one_minus_exp_over(params.zeta, s);
    log_value += -params.mu * (s - b) - b * x;
  } else {
    const double gamma =
        std::sqrt(params.zeta * params.zeta + 2.0 * params.sigma * params.sigma);
    const double eg = std::expm1(gamma * s);  // e^{gamma s} - 1
    const double denom = (gamma + params.zeta) * eg + 2.0 * gamma;
    const double b = 2.0 * eg / denom;
    const double log_a = (2.0 * params.zeta * params.mu /
                          (params.sigma * params.sigma)) *
                         (0.5 * (gamma + params.zeta) * s +
                          std::log(2.0 * gamma) - std::log(denom));
    log_value += log_a - b * x;
  }
  const double value = std::exp(log_value);
  return value > 1.0 ? 1.0 : value;
}

void FactorStepper::step() {
  for (int i = 0; i < 3; ++i) {
    const CirParams& p = params_[i];
    const double x = state_[i];
    const double z = rng_.normal();
    double next = x + p.zeta * (p.mu - x) * step_ +
                  p.sigma * std::sqrt(x) * sqrt_step_ * z;
    if (!std::isfinite(next)) {
      throw SimulationError("factor simulation produced a non-finite value");
    }
    // Full truncation: negative proposals are clamped before the next sqrt.
    state_[i] = next < 0.0 ? 0.0 : next;
  }
}

FactorPath simulate_factors(const std::array<CirParams, 3>& params,
                            const TimeGrid& grid, std::uint64_t seed,
                            std::uint64_t path_index) {
  for (const auto& p : params) p.validate();
  FactorStepper stepper(params, grid.step(), seed,
                        substream_id(kStreamFactors, path_index));
  FactorPath path{grid, {}};
  path.values.reserve(grid.n_nodes());
  path.values.push_back(stepper.state());
  for (int k = 0; k < grid.n_steps(); ++k) {
    stepper.step();
    path.values.push_back(stepper.state());
  }
  return path;
}

}  // namespace cdsxva

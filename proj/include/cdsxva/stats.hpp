#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace cdsxva {

// Compensated (Kahan) accumulator so that reductions are exact enough to be
// reproduced independently of chunking, as long as the summation order is
// fixed.
class KahanAccumulator {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }

  double sum() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Point estimate with its Monte Carlo standard error.
struct Estimate {
  double value = 0.0;
  double se = 0.0;
};

inline double kahan_sum(std::span<const double> xs) {
  KahanAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc.sum();
}

// Sample mean and standard error of the mean.
inline Estimate mean_estimate(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return {};
  const double mean = kahan_sum(xs) / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  KahanAccumulator ss;
  for (double x : xs) {
    const double d = x - mean;
    ss.add(d * d);
  }
  const double var = ss.sum() / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

// First-order delta-method estimate of x̄/ȳ with its standard error.
inline Estimate ratio_estimate(std::span<const double> xs,
                               std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n == 0 || ys.size() != n) return {};
  const double mx = kahan_sum(xs) / static_cast<double>(n);
  const double my = kahan_sum(ys) / static_cast<double>(n);
  const double m = mx / my;
  if (n == 1) return {m, 0.0};
  KahanAccumulator sxx, syy, sxy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx.add(dx * dx);
    syy.add(dy * dy);
    sxy.add(dx * dy);
  }
  const double nm1 = static_cast<double>(n - 1);
  const double var_x = sxx.sum() / nm1;
  const double var_y = syy.sum() / nm1;
  const double cov = sxy.sum() / nm1;
  const double var_ratio =
      (var_x - 2.0 * m * cov + m * m * var_y) / (my * my);
  const double se =
      var_ratio > 0.0 ? std::sqrt(var_ratio / static_cast<double>(n)) : 0.0;
  return {m, se};
}

}  // namespace cdsxva

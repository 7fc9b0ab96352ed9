#pragma once

#include <cmath>
#include <stdexcept>

namespace cdsxva {

// Uniform time grid on [start, end] in year units.
class TimeGrid {
 public:
  TimeGrid(double start, double end, int n_steps)
      : start_(start), end_(end), n_steps_(n_steps) {
    if (!(start >= 0.0) || !(end > start)) {
      throw std::invalid_argument("TimeGrid: need 0 <= start < end");
    }
    if (n_steps < 1) {
      throw std::invalid_argument("TimeGrid: need at least one step");
    }
  }

  // Rounds to the nearest whole number of uniform steps of roughly `step`.
  static TimeGrid with_step(double start, double end, double step) {
    if (!(step > 0.0)) {
      throw std::invalid_argument("TimeGrid: step must be positive");
    }
    const auto n = static_cast<int>(std::llround((end - start) / step));
    return TimeGrid(start, end, n < 1 ? 1 : n);
  }

  double start() const { return start_; }
  double end() const { return end_; }
  int n_steps() const { return n_steps_; }
  int n_nodes() const { return n_steps_ + 1; }
  double step() const { return (end_ - start_) / n_steps_; }

  // node(0) == start, node(n_steps) == end exactly.
  double node(int k) const {
    return start_ + (end_ - start_) * (static_cast<double>(k) / n_steps_);
  }

 private:
  double start_;
  double end_;
  int n_steps_;
};

}  // namespace cdsxva

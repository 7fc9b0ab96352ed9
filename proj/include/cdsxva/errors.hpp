#pragma once

#include <stdexcept>
#include <string>

namespace cdsxva {

// Invalid or inconsistent model/run configuration. Carries the dotted path of
// the offending field so diagnostics can be machine readable.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A pricing routine was asked for something degenerate (e.g. a fair spread
// with zero risky annuity).
class PricingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An object was used after it stopped accepting that operation (e.g. a margin
// update after the account was frozen).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A stochastic kernel produced a non-finite value.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cdsxva

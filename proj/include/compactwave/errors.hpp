#pragma once

#include <stdexcept>
#include <string>

namespace compactwave {

/// Invalid user input: bad configuration, inconsistent arguments.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Time step rejected by the CFL gate under the abort policy.
class CflError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-finite value appeared in the solution.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(long step, double time)
      : std::runtime_error("non-finite field value at step " + std::to_string(step) +
                           " (t = " + std::to_string(time) + ")"),
        step_(step),
        time_(time) {}

  long step() const { return step_; }
  double time() const { return time_; }

 private:
  long step_;
  double time_;
};

}  // namespace compactwave

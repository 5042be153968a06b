#pragma once

#include <stdexcept>
#include <string>

namespace obsint {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an integrated state becomes non-finite (or leaves its valid
// domain). Carries the simulation time at which it was detected.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double t)
      : Error(what + " (t = " + std::to_string(t) + " s)"), time_(t) {}

  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace obsint

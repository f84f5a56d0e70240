#pragma once

#include <stdexcept>
#include <string>

namespace omx {

/// Parameters violate a model invariant (see validate()).
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine hit a singularity or failed to bracket a solution.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace omx

#pragma once

#include <stdexcept>
#include <string>

namespace infspec {

// Invalid family parameters (negative radius, k < 3, inner >= outer, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A volume constraint that has no admissible solution.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Grid spacing too coarse for the domain, or an empty raster.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Occupancy split into several components, or a geodesic front that could
// not reach every occupied cell.
class ConnectivityError : public ResolutionError {
 public:
  using ResolutionError::ResolutionError;
};

class NotConvexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// delta2 * r >= 1: the outer ball radius is infinite or negative.
class BoundVacuousError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The distance cone is only known to be a first eigenfunction for some
// families; anything else is refused.
class NotCertifiedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace infspec

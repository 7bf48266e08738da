#pragma once

#include <stdexcept>
#include <string>

namespace darcy {

/// Bad argument to a public operation (counts, degrees, parameters).
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Point evaluation requested outside the meshed domain.
class OutOfDomain : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Boundary data that cannot be imposed on the discrete space.
class IllPosedBoundary : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Factorization broke down or the solve missed its residual target.
class SingularSystem : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace darcy

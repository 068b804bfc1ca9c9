#pragma once

#include <stdexcept>
#include <string>

namespace wedgeop {

/// Thrown when a computation cannot deliver a trustworthy number: breakdown,
/// non-convergence, non-finite values, ill-conditioned solves.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wedgeop

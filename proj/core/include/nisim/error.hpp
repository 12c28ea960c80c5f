#pragma once

#include <stdexcept>
#include <string>

namespace nisim {

/// Raised when a computation cannot meet its numerical tolerance
/// (e.g. quadrature that does not converge).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nisim

#pragma once

#include <complex>
#include <functional>

namespace nisim {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  /// Equal sub-intervals integrated independently before summation, in order.
  int pieces = 64;
  int max_depth = 18;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]: each equal piece
/// is bisected until it meets its share of abs_tol. Throws
/// NumericalError if the accumulated error estimate exceeds abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opt = {});
std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                               const QuadratureOptions& opt = {});

}  // namespace nisim

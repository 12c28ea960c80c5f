#include "nisim/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <stdexcept>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "nisim/error.hpp"

namespace nisim {

namespace {

// One 7/15 panel. Boost reports the Kronrod-Gauss difference in the
// coordinates of [-1, 1], so it is rescaled to the panel width here.
template <class T, class F>
T panel(const F& f, double lo, double hi, double* err) {
  using boost::math::quadrature::gauss_kronrod;
  double raw = 0.0;
  T value = gauss_kronrod<double, 15>::integrate(f, lo, hi, 0, 0.0, &raw);
  *err = raw * 0.5 * (hi - lo);
  return value;
}

// Bisects until each panel meets its share of the budget.
template <class T, class F>
T refine(const F& f, double lo, double hi, T coarse, double coarse_err, double tol, int depth, double* err) {
  // A budget below the rounding floor of the panel value cannot be met by
  // bisection; keep the estimate and let the caller report the shortfall.
  const bool unresolvable = tol < 16.0 * std::numeric_limits<double>::epsilon() * std::abs(coarse);
  if (coarse_err <= tol || depth == 0 || unresolvable) {
    *err += coarse_err;
    return coarse;
  }
  const double mid = 0.5 * (lo + hi);
  double el = 0.0, er = 0.0;
  T left = panel<T>(f, lo, mid, &el);
  T right = panel<T>(f, mid, hi, &er);
  T sum = refine(f, lo, mid, left, el, 0.5 * tol, depth - 1, err);
  sum += refine(f, mid, hi, right, er, 0.5 * tol, depth - 1, err);
  return sum;
}

template <class T, class F>
T integrate_pieces(const F& f, double a, double b, const QuadratureOptions& opt) {
  if (opt.pieces < 1) throw std::invalid_argument("quadrature needs at least one piece");
  if (a == b) return T{};
  const double h = (b - a) / opt.pieces;
  const double piece_tol = opt.abs_tol / opt.pieces;
  T sum{};
  double err_sum = 0.0;
  for (int k = 0; k < opt.pieces; ++k) {
    double lo = a + h * k;
    double hi = k + 1 == opt.pieces ? b : a + h * (k + 1);
    double err = 0.0;
    T coarse = panel<T>(f, lo, hi, &err);
    sum += refine(f, lo, hi, coarse, err, piece_tol, opt.max_depth, &err_sum);
  }
  if (!(err_sum <= opt.abs_tol)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "quadrature error estimate %.3g exceeds tolerance %.3g", err_sum, opt.abs_tol);
    throw NumericalError(buf);
  }
  return sum;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opt) {
  return integrate_pieces<double>(f, a, b, opt);
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                               const QuadratureOptions& opt) {
  return integrate_pieces<std::complex<double>>(f, a, b, opt);
}

}  // namespace nisim

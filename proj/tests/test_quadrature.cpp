#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nisim/error.hpp"
#include "nisim/quadrature.hpp"

using namespace nisim;

TEST_CASE("smooth integrals") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::exp(x); }, -1.0, 2.0) ==
        doctest::Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-13));
  auto z = integrate_complex([](double x) { return std::polar(1.0, 3.0 * x); }, 0.0, 1.0);
  std::complex<double> ref = (std::polar(1.0, 3.0) - 1.0) / std::complex<double>(0.0, 3.0);
  CHECK(std::abs(z - ref) < 1e-13);
}

TEST_CASE("kinks are refined to the absolute budget") {
  // The kink sits inside a piece rather than on an edge.
  double v = integrate([](double x) { return std::abs(x - 0.3137); }, -1.0, 1.0);
  double ref = 0.5 * (1.3137 * 1.3137 + 0.6863 * 0.6863);
  CHECK(std::abs(v - ref) < 1e-10);
}

TEST_CASE("edge cases") {
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
  CHECK(integrate([](double) { return 1.0; }, 2.0, 0.0) == doctest::Approx(-2.0));
  QuadratureOptions bad;
  bad.pieces = 0;
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, bad), std::invalid_argument);
}

TEST_CASE("unreachable tolerance is a numerical failure") {
  QuadratureOptions strict;
  strict.abs_tol = 1e-14;
  strict.max_depth = 3;
  strict.pieces = 2;
  CHECK_THROWS_AS(integrate([](double x) { return x < 0.3 ? 0.0 : 1.0; }, 0.0, 1.0, strict), NumericalError);
}

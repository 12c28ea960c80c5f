#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nisim/vibration.hpp"

using namespace nisim::vibration;

namespace {

VibrationParams sample(double omega = 0.0) {
  const double v = neutron_speed(4.4e-10);
  const double bragg = 44.55 * std::numbers::pi / 180.0;
  VibrationParams p;
  p.omega = omega;
  p.theta0 = 5e-13;
  p.v_y = v * std::sin(bragg);
  p.v_z = v * std::cos(bragg);
  p.tau = 6.25e-5;
  p.blade_thickness = 3e-3;
  return p;
}

// omega giving the requested Bessel argument.
double omega_for(double x) {
  VibrationParams p = sample(1.0);
  return std::sqrt(x / bessel_argument(p));
}

}  // namespace

TEST_CASE("de Broglie speed at 4.4 Angstrom") {
  CHECK(neutron_speed(4.4e-10) == doctest::Approx(899.1).epsilon(1e-3));
  CHECK_THROWS_AS(neutron_speed(0.0), std::invalid_argument);
}

TEST_CASE("no noise keeps full contrast") {
  CHECK(relative_contrast(sample(0.0)) == 1.0);
  CHECK(defocused_relative_contrast(sample(0.0), 1.0) == 1.0);
}

TEST_CASE("first Bessel zero extinguishes the fringe") {
  const double j01 = boost::math::cyl_bessel_j_zero(0.0, 1);
  VibrationParams p = sample(omega_for(j01));
  CHECK(bessel_argument(p) == doctest::Approx(j01).epsilon(1e-14));
  CHECK(relative_contrast(p) < 1e-6);
}

TEST_CASE("matches an independent Bessel evaluation") {
  for (int k = 0; k <= 200; ++k) {
    double x = 0.1 * k;
    VibrationParams p = sample(omega_for(x));
    double ref = std::abs(boost::math::cyl_bessel_j(0, bessel_argument(p)));
    CHECK(std::abs(relative_contrast(p) - ref) < 1e-9);
    CHECK(relative_contrast(p) >= 0.0);
    CHECK(relative_contrast(p) <= 1.0);
  }
}

TEST_CASE("depends on parameters only through the Bessel argument") {
  VibrationParams p = sample(5.0);
  VibrationParams q = p;
  q.theta0 *= 2.0;
  q.tau *= 0.5;
  CHECK(bessel_argument(q) == bessel_argument(p));
  CHECK(relative_contrast(q) == relative_contrast(p));
}

TEST_CASE("envelope decays as x^-1/2") {
  // Between consecutive zeros the peak of |J0| times sqrt(x) tends to sqrt(2/pi).
  for (int n = 5; n < 10; ++n) {
    double lo = boost::math::cyl_bessel_j_zero(0.0, n), hi = boost::math::cyl_bessel_j_zero(0.0, n + 1);
    double peak = 0.0, at = 0.0;
    for (int k = 0; k <= 400; ++k) {
      double x = lo + (hi - lo) * k / 400;
      double v = relative_contrast(sample(omega_for(x)));
      if (v > peak) peak = v, at = x;
    }
    CHECK(peak * std::sqrt(at) == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(0.02));
  }
}

TEST_CASE("defocused model reduces to the focused one") {
  for (double x : {0.3, 1.0, 2.404825557695773, 6.0, 30.0}) {
    VibrationParams p = sample(omega_for(x));
    CHECK(std::abs(defocused_relative_contrast(p, 0.0) - relative_contrast(p)) < 1e-6);
  }
}

TEST_CASE("defocused model is continuous in the defocus") {
  VibrationParams p = sample(omega_for(3.0));
  double prev = defocused_relative_contrast(p, 0.0);
  for (int k = 1; k <= 50; ++k) {
    double next = defocused_relative_contrast(p, 0.02 * k);
    CHECK(std::abs(next - prev) < 1e-3);
    prev = next;
  }
}

TEST_CASE("defocus to the blade thickness changes little") {
  double worst = 0.0;
  for (int k = 0; k <= 400; ++k) {
    VibrationParams p = sample(62.83 * k / 400);
    worst = std::max(worst, std::abs(defocused_relative_contrast(p, 1.0) - relative_contrast(p)));
  }
  CHECK(worst <= 0.1);
}

TEST_CASE("parameter validation") {
  VibrationParams p = sample(1.0);
  p.theta0 = 0.0;
  CHECK_THROWS_AS(relative_contrast(p), std::invalid_argument);
  p = sample(-1.0);
  CHECK_THROWS_AS(relative_contrast(p), std::invalid_argument);
  CHECK_THROWS_AS(defocused_relative_contrast(sample(1.0), -0.5), std::invalid_argument);
}

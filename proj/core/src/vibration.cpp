#include "nisim/vibration.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "nisim/error.hpp"

namespace nisim::vibration {

void VibrationParams::validate() const {
  if (!(omega >= 0.0)) throw std::invalid_argument("noise frequency must be non-negative");
  if (!(theta0 > 0.0 && v_y > 0.0 && v_z > 0.0 && tau > 0.0 && m_n > 0.0 && hbar > 0.0))
    throw std::invalid_argument("vibration parameters must be positive");
  if (!(blade_thickness >= 0.0)) throw std::invalid_argument("blade thickness must be non-negative");
}

double neutron_speed(double wavelength) {
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be positive");
  return kPlanck / (kNeutronMass * wavelength);
}

double bessel_argument(const VibrationParams& p) {
  return p.omega * p.omega * 48.0 * p.m_n * p.v_y * p.v_z * p.theta0 * p.tau / p.hbar;
}

double relative_contrast(const VibrationParams& p) {
  p.validate();
  if (p.omega == 0.0) return 1.0;
  return std::abs(std::cyl_bessel_j(0.0, bessel_argument(p)));
}

double area_mismatch_phase(const VibrationParams& p, double dz_over_z0) {
  const double area = dz_over_z0 * p.blade_thickness * p.v_y * p.tau;
  return 2.0 * p.m_n * p.omega * p.theta0 * area / p.hbar;
}

namespace {

// |<exp(i (x sin d + y cos d))>_d| by the periodic trapezoid rule.
double phase_average(double x, double y, std::size_t samples) {
  std::complex<double> sum = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    double d = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    sum += std::polar(1.0, x * std::sin(d) + y * std::cos(d));
  }
  return std::abs(sum) / static_cast<double>(samples);
}

}  // namespace

double defocused_relative_contrast(const VibrationParams& p, double dz_over_z0) {
  p.validate();
  if (!(dz_over_z0 >= 0.0)) throw std::invalid_argument("defocus must be non-negative");
  if (p.omega == 0.0) return 1.0;
  const double x = bessel_argument(p);
  const double y = area_mismatch_phase(p, dz_over_z0);

  // The rule is exact up to Bessel orders beyond the sample count, so start
  // comfortably above the phase amplitude and double until stable.
  std::size_t samples = 1u << 14;
  while (static_cast<double>(samples) < 4.0 * std::hypot(x, y) + 64.0) samples <<= 1;
  double prev = phase_average(x, y, samples);
  for (int round = 0; round < 6; ++round) {
    samples <<= 1;
    double next = phase_average(x, y, samples);
    if (std::abs(next - prev) <= 1e-12) return next;
    prev = next;
  }
  throw NumericalError("noise phase average did not converge");
}

}  // namespace nisim::vibration

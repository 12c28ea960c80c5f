#pragma once

namespace nisim::vibration {

/// CODATA values used as defaults.
inline constexpr double kNeutronMass = 1.67492749804e-27;   // kg
inline constexpr double kHbar = 1.054571817e-34;            // J s
inline constexpr double kPlanck = 6.62607015e-34;           // J s

/// Single-frequency rotational noise about the centre of mass, normal to the
/// interferometer plane. SI units throughout.
struct VibrationParams {
  double omega = 0.0;             ///< rad/s
  double theta0 = 0.0;            ///< noise amplitude, rad
  double v_y = 0.0;               ///< m/s
  double v_z = 0.0;               ///< m/s
  double tau = 0.0;               ///< first-to-second blade flight time, s
  double m_n = kNeutronMass;
  double hbar = kHbar;
  double blade_thickness = 0.0;   ///< z0 in m, only used by the defocused model

  void validate() const;
};

/// de Broglie speed for a wavelength in metres.
double neutron_speed(double wavelength);

/// Argument of the Bessel function, omega^2 * 48 m_n v_y v_z theta0 tau / hbar.
double bessel_argument(const VibrationParams& p);

/// V(omega)/V(0) = |J_0(bessel_argument)| for the focused zero-area geometry.
double relative_contrast(const VibrationParams& p);

/// Reconstructed model for the defocused geometry. The analyser shift
/// dz = dz_over_z0 * z0 leaves the loops with an area mismatch
/// dA = dz v_y tau, which adds a first-order rotation phase
/// 2 m_n omega theta0 dA / hbar in quadrature with the focused residual.
/// The fringe is averaged numerically over the noise phase offset.
/// Throws NumericalError if the phase average does not converge.
double defocused_relative_contrast(const VibrationParams& p, double dz_over_z0);

/// Amplitude of the first-order phase for the defocused model.
double area_mismatch_phase(const VibrationParams& p, double dz_over_z0);

}  // namespace nisim::vibration

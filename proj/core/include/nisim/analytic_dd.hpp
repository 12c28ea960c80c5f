#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "nisim/quadrature.hpp"

namespace nisim::dd {

using cplx = std::complex<double>;

/// Normalised angular distribution g(eta) over [-eta_max, eta_max], with
/// eta = delta_theta / Darwin width.
class EtaDistribution {
 public:
  enum class Kind { Gaussian, Uniform, Tabulated, Delta };

  static EtaDistribution gaussian(double sigma = 1.0, double eta_max = 5.0);
  static EtaDistribution uniform(double eta_max);
  /// Piecewise-linear weights on strictly increasing knots; normalised here.
  static EtaDistribution tabulated(std::vector<double> eta, std::vector<double> weight);
  /// All weight on a single eta (a plane wave).
  static EtaDistribution delta(double eta0 = 0.0);

  Kind kind() const { return kind_; }
  double eta_max() const { return eta_max_; }
  double sigma() const { return sigma_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Normalised density (for Delta this is not defined and returns 0).
  double density(double eta) const;

  /// integral of g(eta) f(eta) d eta.
  double expect(const std::function<double(double)>& f, const QuadratureOptions& opt) const;
  cplx expect_complex(const std::function<cplx(double)>& f, const QuadratureOptions& opt) const;

 private:
  Kind kind_ = Kind::Gaussian;
  double sigma_ = 1.0;
  double eta_max_ = 5.0;
  double scale_ = 1.0;
  std::vector<double> knots_;
  std::vector<double> weights_;

  template <class T>
  T expect_impl(const std::function<T(double)>& f, const QuadratureOptions& opt) const;
};

/// Two-beam Laue-case parameters. Lengths share one (arbitrary) unit.
struct DDParams {
  double z0 = 1.0;            ///< blade thickness
  double delta_H = 0.1;       ///< Pendelloesung length
  double v_ratio_phase = 0.0; ///< arg(V_H / V_-H); the magnitude is 1
  double chi = 0.0;           ///< nuclear phase z0 (K_perp - k_perp)
  EtaDistribution eta_dist = EtaDistribution::gaussian();
  QuadratureOptions quadrature{};

  void validate() const;
  double thickness_ratio() const { return z0 / delta_H; }
};

struct Pendellosung {
  double c;          ///< cos(pi z0/Delta_H sqrt(1+eta^2))
  double s;          ///< eta/sqrt(1+eta^2) sin(...), the term entering t
  double s_reflect;  ///< 1/sqrt(1+eta^2) sin(...), the term entering r
};

Pendellosung pendellosung(double eta, const DDParams& dd);

struct Coefficients {
  cplx t;
  cplx r;
};

/// Transmission and reflection amplitudes at depth z (0 <= z <= z0).
Coefficients coefficients(double eta, double z, const DDParams& dd);

/// integral g(eta) |t|^m |r|^n at the exit surface.
double j_mn(int m, int n, const DDParams& dd);

/// Coherence gamma(dz) = integral g(eta) exp(i (2 arg t + p dz)), p = 2 pi eta / Delta_H.
cplx coherence_integral(const DDParams& dd, double dz);

/// dz = 2 z_m - 2 z_m' + z_a - z_s from splitter, mirror and analyser positions.
double defocus_from_positions(double z_splitter, double z_mirror, double z_mirror_prime, double z_analyser);

struct FourBladeIntensities {
  double I_O;
  double I_H;
  double A_O;
  double A_H;
  double B_H;
  double phase_H;

  double contrast_H() const { return A_H > 0.0 ? B_H / A_H : 0.0; }
};

/// I_H = A_H + B_H cos(phi - phase_H), I_O = A_O - B_H cos(phi - phase_H)
/// with A_O = J_40 + J_04, A_H = 2 J_22 and B_H = A_H |gamma(dz)|.
FourBladeIntensities four_blade_intensities(const DDParams& dd, double dz, double phi);

}  // namespace nisim::dd

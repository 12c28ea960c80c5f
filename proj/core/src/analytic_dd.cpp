#include "nisim/analytic_dd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <type_traits>

namespace nisim::dd {

using std::numbers::pi;

namespace {

template <class T>
T integrate_as(const std::function<T(double)>& f, double a, double b, const QuadratureOptions& opt) {
  if constexpr (std::is_same_v<T, double>)
    return integrate(f, a, b, opt);
  else
    return integrate_complex(f, a, b, opt);
}

}  // namespace

EtaDistribution EtaDistribution::gaussian(double sigma, double eta_max) {
  if (!(sigma > 0.0) || !(eta_max > 0.0)) throw std::invalid_argument("gaussian g(eta) needs sigma, eta_max > 0");
  EtaDistribution d;
  d.kind_ = Kind::Gaussian;
  d.sigma_ = sigma;
  d.eta_max_ = eta_max;
  d.scale_ = 1.0 / (sigma * std::sqrt(2.0 * pi) * std::erf(eta_max / (sigma * std::numbers::sqrt2)));
  return d;
}

EtaDistribution EtaDistribution::uniform(double eta_max) {
  if (!(eta_max > 0.0)) throw std::invalid_argument("uniform g(eta) needs eta_max > 0");
  EtaDistribution d;
  d.kind_ = Kind::Uniform;
  d.eta_max_ = eta_max;
  d.scale_ = 1.0 / (2.0 * eta_max);
  return d;
}

EtaDistribution EtaDistribution::tabulated(std::vector<double> eta, std::vector<double> weight) {
  if (eta.size() < 2 || eta.size() != weight.size())
    throw std::invalid_argument("tabulated g(eta) needs matching knots and weights, at least two");
  for (std::size_t k = 1; k < eta.size(); ++k)
    if (!(eta[k] > eta[k - 1])) throw std::invalid_argument("tabulated g(eta) knots must increase");
  double area = 0.0;
  for (std::size_t k = 0; k < eta.size(); ++k) {
    if (!(weight[k] >= 0.0)) throw std::invalid_argument("tabulated g(eta) weights must be non-negative");
    if (k > 0) area += 0.5 * (weight[k] + weight[k - 1]) * (eta[k] - eta[k - 1]);
  }
  if (!(area > 0.0)) throw std::invalid_argument("tabulated g(eta) has zero area");
  EtaDistribution d;
  d.kind_ = Kind::Tabulated;
  d.eta_max_ = std::max(std::abs(eta.front()), std::abs(eta.back()));
  d.scale_ = 1.0 / area;
  d.knots_ = std::move(eta);
  d.weights_ = std::move(weight);
  return d;
}

EtaDistribution EtaDistribution::delta(double eta0) {
  EtaDistribution d;
  d.kind_ = Kind::Delta;
  d.eta_max_ = std::abs(eta0);
  d.knots_ = {eta0};
  return d;
}

double EtaDistribution::density(double eta) const {
  switch (kind_) {
    case Kind::Gaussian:
      if (std::abs(eta) > eta_max_) return 0.0;
      return scale_ * std::exp(-0.5 * eta * eta / (sigma_ * sigma_));
    case Kind::Uniform:
      return std::abs(eta) > eta_max_ ? 0.0 : scale_;
    case Kind::Tabulated: {
      if (eta < knots_.front() || eta > knots_.back()) return 0.0;
      auto it = std::upper_bound(knots_.begin(), knots_.end(), eta);
      if (it == knots_.end()) return scale_ * weights_.back();
      auto k = static_cast<std::size_t>(it - knots_.begin());
      double u = (eta - knots_[k - 1]) / (knots_[k] - knots_[k - 1]);
      return scale_ * ((1.0 - u) * weights_[k - 1] + u * weights_[k]);
    }
    case Kind::Delta:
      return 0.0;
  }
  return 0.0;
}

template <class T>
T EtaDistribution::expect_impl(const std::function<T(double)>& f, const QuadratureOptions& opt) const {
  if (kind_ == Kind::Delta) return f(knots_.front());
  auto weighted = [&](double eta) -> T { return density(eta) * f(eta); };
  if (kind_ != Kind::Tabulated) return integrate_as<T>(std::function<T(double)>(weighted), -eta_max_, eta_max_, opt);

  // Integrate knot to knot so the interpolation kinks sit on piece edges.
  const auto segments = static_cast<int>(knots_.size() - 1);
  QuadratureOptions per = opt;
  per.pieces = std::max(1, opt.pieces / segments);
  per.abs_tol = opt.abs_tol / segments;
  T sum{};
  for (std::size_t k = 1; k < knots_.size(); ++k)
    sum += integrate_as<T>(std::function<T(double)>(weighted), knots_[k - 1], knots_[k], per);
  return sum;
}

double EtaDistribution::expect(const std::function<double(double)>& f, const QuadratureOptions& opt) const {
  return expect_impl<double>(f, opt);
}

cplx EtaDistribution::expect_complex(const std::function<cplx(double)>& f, const QuadratureOptions& opt) const {
  return expect_impl<cplx>(f, opt);
}

void DDParams::validate() const {
  if (!(z0 > 0.0)) throw std::invalid_argument("z0 must be positive");
  if (!(delta_H > 0.0)) throw std::invalid_argument("delta_H must be positive");
  if (!std::isfinite(v_ratio_phase) || !std::isfinite(chi)) throw std::invalid_argument("phases must be finite");
}

Pendellosung pendellosung(double eta, const DDParams& dd) {
  const double root = std::sqrt(1.0 + eta * eta);
  const double arg = pi * dd.z0 / dd.delta_H * root;
  const double sn = std::sin(arg);
  return {std::cos(arg), eta / root * sn, sn / root};
}

Coefficients coefficients(double eta, double z, const DDParams& dd) {
  if (z < 0.0 || z > dd.z0) throw std::invalid_argument("depth must lie within the blade");
  const Pendellosung p = pendellosung(eta, dd);
  const cplx nuclear = std::polar(1.0, dd.chi);
  cplx t = nuclear * std::polar(1.0, -pi * dd.z0 / dd.delta_H * eta) * cplx(p.c, p.s);
  cplx r = cplx(0.0, -1.0) * nuclear * std::polar(1.0, -pi / dd.delta_H * (dd.z0 - 2.0 * z) * eta) *
           std::polar(1.0, dd.v_ratio_phase) * p.s_reflect;
  return {t, r};
}

double j_mn(int m, int n, const DDParams& dd) {
  if (m < 0 || n < 0) throw std::invalid_argument("J_mn needs non-negative exponents");
  dd.validate();
  return dd.eta_dist.expect(
      [&](double eta) {
        auto c = coefficients(eta, dd.z0, dd);
        return std::pow(std::abs(c.t), m) * std::pow(std::abs(c.r), n);
      },
      dd.quadrature);
}

cplx coherence_integral(const DDParams& dd, double dz) {
  dd.validate();
  return dd.eta_dist.expect_complex(
      [&](double eta) -> cplx {
        cplx t = coefficients(eta, dd.z0, dd).t;
        double mag = std::abs(t);
        if (mag == 0.0) return 0.0;
        cplx unit = t / mag;
        return unit * unit * std::polar(1.0, 2.0 * pi * eta / dd.delta_H * dz);
      },
      dd.quadrature);
}

double defocus_from_positions(double z_splitter, double z_mirror, double z_mirror_prime, double z_analyser) {
  return 2.0 * z_mirror - 2.0 * z_mirror_prime + z_analyser - z_splitter;
}

FourBladeIntensities four_blade_intensities(const DDParams& dd, double dz, double phi) {
  const double a_o = j_mn(4, 0, dd) + j_mn(0, 4, dd);
  const double a_h = 2.0 * j_mn(2, 2, dd);
  const cplx gamma = coherence_integral(dd, dz);
  const double b_h = a_h * std::abs(gamma);
  const double phase = std::arg(gamma);
  const double osc = b_h * std::cos(phi - phase);
  return {a_o - osc, a_h + osc, a_o, a_h, b_h, phase};
}

}  // namespace nisim::dd

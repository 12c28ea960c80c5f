#include "nisim/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nisim/error.hpp"
#include "nisim/parallel.hpp"

namespace nisim {

double FringeFit::operator()(double phi) const { return A + B * std::cos(phi - phase); }

namespace {

// Normal equations for I = A + c cos(phi) + s sin(phi).
std::array<double, 3> least_squares_cos_sin(std::span<const FringeSample> samples) {
  if (samples.size() < 3) throw std::invalid_argument("fringe fit needs at least 3 samples");
  std::array<std::array<double, 3>, 3> m{};
  std::array<double, 3> rhs{};
  for (const auto& s : samples) {
    std::array<double, 3> basis{1.0, std::cos(s.phi), std::sin(s.phi)};
    for (int r = 0; r < 3; ++r) {
      rhs[r] += basis[r] * s.intensity;
      for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
    }
  }
  auto det3 = [](const std::array<std::array<double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  double det = det3(m);
  double scale = m[0][0] * m[0][0] * m[0][0];
  if (!(std::abs(det) > 1e-12 * scale)) throw std::invalid_argument("fringe phases do not determine a sinusoid");
  std::array<double, 3> x{};
  for (int k = 0; k < 3; ++k) {
    auto mk = m;
    for (int r = 0; r < 3; ++r) mk[r][k] = rhs[r];
    x[k] = det3(mk) / det;
  }
  return x;
}

}  // namespace

FringeFit fit_fringe(std::span<const FringeSample> samples) {
  auto [a, c, s] = least_squares_cos_sin(samples);
  double b = std::hypot(c, s);
  // A flat fringe has no phase; report 0 rather than rounding noise.
  double phase = b > 1e-14 * std::max(1.0, std::abs(a)) ? std::atan2(s, c) : 0.0;
  return {a, b, wrap_phase(phase)};
}

FringeFit fit_fringe_at(std::span<const FringeSample> samples, double phase) {
  auto [a, c, s] = least_squares_cos_sin(samples);
  return {a, c * std::cos(phase) + s * std::sin(phase), wrap_phase(phase)};
}

double contrast(const FringeFit& fit) {
  if (!(fit.A > 0.0)) throw std::invalid_argument("contrast needs a positive mean intensity");
  return std::abs(fit.B) / fit.A;
}

cplx coherence(const PathPair& pair, long m) {
  const WaveField& one = pair.psi_I;
  const WaveField& two = pair.psi_II;
  // Node j of path II meets node j - m of path I.
  long lo = std::max(two.lo(), one.lo() + m);
  long hi = std::min(two.hi(), one.hi() + m);
  cplx sum = 0.0;
  for (long j = lo; j < hi; ++j) {
    auto k2 = static_cast<std::size_t>(j - two.lo());
    auto k1 = static_cast<std::size_t>(j - m - one.lo());
    sum += std::conj(two.a()[k2]) * one.a()[k1] + std::conj(two.b()[k2]) * one.b()[k1];
  }
  return sum;
}

double coherence_contrast(const PathPair& pair, long m) {
  double mean = norm(pair.psi_I) + norm(pair.psi_II);
  if (!(mean > 0.0)) throw std::invalid_argument("contrast needs a positive mean intensity");
  return 2.0 * std::abs(coherence(pair, m)) / mean;
}

std::vector<FringeSample> sample_fringe(const PathPair& pair, int phases) {
  if (phases < 3) throw std::invalid_argument("need at least 3 phases");
  std::vector<FringeSample> out;
  out.reserve(static_cast<std::size_t>(phases));
  for (int k = 0; k < phases; ++k) {
    double phi = 2.0 * std::numbers::pi * k / phases;
    out.push_back({phi, norm(recombine(pair, phi))});
  }
  return out;
}

std::vector<DefocusPoint> defocus_sweep(const Geometry& g, long m_min, long m_max) {
  if (m_max < m_min) throw std::invalid_argument("empty defocus range");
  Geometry focused = g;
  focused.defocus_m = 0;
  focused.validate();
  Geometry lo_check = g, hi_check = g;
  lo_check.defocus_m = m_min;
  hi_check.defocus_m = m_max;
  lo_check.validate();
  hi_check.validate();

  ExitFields exit = propagate_paths(focused);
  PathPair h{project(exit.path_I, Port::H), project(exit.path_II, Port::H), Port::H};
  PathPair o{project(exit.path_I, Port::O), project(exit.path_II, Port::O), Port::O};

  const auto count = static_cast<std::size_t>(m_max - m_min + 1);
  std::vector<DefocusPoint> out(count);
  parallel_for(count, [&](std::size_t i) {
    long m = m_min + static_cast<long>(i);
    out[i] = {m, coherence_contrast(h, m), coherence_contrast(o, m), coherence(h, m)};
  });

  for (std::size_t i : {std::size_t{0}, count / 2, count - 1}) {
    Geometry shifted = g;
    shifted.defocus_m = out[i].m;
    PathPair pair = aligned({project(propagate_paths(shifted).path_I, Port::H), h.psi_II, Port::H});
    auto samples = sample_fringe(pair);
    double fitted = contrast(fit_fringe(samples));
    if (std::abs(fitted - out[i].contrast_H) > 1e-9)
      throw NumericalError("fringe fit disagrees with coherence contrast at m = " + std::to_string(out[i].m));
  }
  return out;
}

double Profile::total() const {
  double sum = 0.0;
  for (double v : intensity) sum += v;
  return sum;
}

double Profile::centroid() const {
  double sum = 0.0, first = 0.0;
  for (std::size_t k = 0; k < intensity.size(); ++k) {
    sum += intensity[k];
    first += intensity[k] * static_cast<double>(lo + static_cast<long>(k));
  }
  return sum > 0.0 ? first / sum : 0.0;
}

double Profile::rms_spread() const {
  double sum = total();
  if (!(sum > 0.0)) return 0.0;
  double c = centroid();
  double second = 0.0;
  for (std::size_t k = 0; k < intensity.size(); ++k) {
    double d = static_cast<double>(lo + static_cast<long>(k)) - c;
    second += intensity[k] * d * d;
  }
  return std::sqrt(second / sum);
}

Profile intensity_profile(const WaveField& psi) {
  Profile p{psi.lo(), std::vector<double>(psi.width())};
  for (std::size_t k = 0; k < psi.width(); ++k) p.intensity[k] = std::norm(psi.a()[k]) + std::norm(psi.b()[k]);
  return p;
}

Profile exit_profile(const Geometry& g, Port port, double phi) {
  return intensity_profile(recombine(run_paths(g, port), phi));
}

Profile exit_profile(const ExitFields& exit, Port port, double phi) {
  PathPair pair = aligned({project(exit.path_I, port), project(exit.path_II, port), port});
  return intensity_profile(recombine(pair, phi));
}

}  // namespace nisim

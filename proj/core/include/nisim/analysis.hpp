#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nisim/interferometer.hpp"

namespace nisim {

/// I(phi) = A + B cos(phi - phase).
struct FringeFit {
  double A = 0.0;
  double B = 0.0;
  double phase = 0.0;

  double operator()(double phi) const;
};

struct FringeSample {
  double phi;
  double intensity;
};

/// Least-squares sinusoid through the samples. B is returned non-negative
/// and phase lies in (-pi, pi]; a flat fringe reports phase 0. For K
/// equally spaced phases this is the first DFT bin.
/// Throws std::invalid_argument with fewer than 3 samples or when the phases
/// do not determine a sinusoid (e.g. all equal).
FringeFit fit_fringe(std::span<const FringeSample> samples);

/// Same fit with the fringe phase pinned to `phase`; B keeps its sign.
/// Used to compare two ports against one common phase reference.
FringeFit fit_fringe_at(std::span<const FringeSample> samples, double phase);

/// |B|/A. Throws std::invalid_argument for A <= 0.
double contrast(const FringeFit& fit);

/// Coherence of the pair after path I is moved by m nodes toward larger j:
/// sum_j conj(psi_II_j) psi_I_{j-m}. With m = 0 this is the overlap that sets
/// the fringe, B = 2|Gamma| and phase = arg Gamma.
cplx coherence(const PathPair& pair, long m = 0);

/// 2|Gamma_m| / (|psi_I|^2 + |psi_II|^2).
double coherence_contrast(const PathPair& pair, long m = 0);

/// |recombine(pair, phi)|^2 at K equally spaced phases in [0, 2 pi).
std::vector<FringeSample> sample_fringe(const PathPair& pair, int phases = 16);

struct DefocusPoint {
  long m;
  double contrast_H;
  double contrast_O;
  cplx gamma_H;
};

/// Contrast at both ports for every m in [m_min, m_max]. The geometry's own
/// defocus_m is ignored. Three points (ends and middle) are recomputed through
/// shifted propagation and a 16-phase fit; disagreement above 1e-9 raises
/// NumericalError.
std::vector<DefocusPoint> defocus_sweep(const Geometry& g, long m_min, long m_max);

/// Per-node intensity.
struct Profile {
  long lo = 0;
  std::vector<double> intensity;

  double total() const;
  double centroid() const;
  /// Second moment about the intensity centroid, in nodes.
  double rms_spread() const;
};

Profile intensity_profile(const WaveField& psi);

/// Profile of the port-projected exit field at control phase phi.
Profile exit_profile(const Geometry& g, Port port, double phi);

/// Same, from already propagated exit fields.
Profile exit_profile(const ExitFields& exit, Port port, double phi);

}  // namespace nisim

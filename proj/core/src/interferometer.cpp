#include "nisim/interferometer.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nisim {

void Geometry::validate() const {
  const long limit = 4L * blade.layers();
  if (std::labs(defocus_m) > limit)
    throw std::invalid_argument("defocus shift " + std::to_string(defocus_m) + " exceeds 4N = " +
                                std::to_string(limit));
}

WaveField project(const WaveField& psi, Port port) {
  WaveField out = psi;
  auto drop = port == Port::O ? out.b() : out.a();
  std::fill(drop.begin(), drop.end(), cplx{0.0});
  return out;
}

WaveField apply_mirror(const WaveField& psi, const BladeParams& p) {
  // U is linear, so each branch can be propagated on its own and the
  // opposite branch kept.
  WaveField from_o = project(apply_blade(project(psi, Port::O), p), Port::H);
  WaveField from_h = project(apply_blade(project(psi, Port::H), p), Port::O);
  return from_o + from_h;
}

namespace {

// Mirror blade applied to a field known to live on a single branch.
WaveField mirror_single_branch(const WaveField& psi, Port incoming, const BladeParams& p) {
  Port outgoing = incoming == Port::O ? Port::H : Port::O;
  return project(apply_blade(psi, p), outgoing);
}

}  // namespace

ExitFields propagate_paths(const Geometry& g) {
  g.validate();
  const BladeParams& blade = g.blade;
  WaveField split = apply_blade(prepare_input(0, Branch::A), blade);
  WaveField path_I = project(split, Port::O);
  WaveField path_II = project(split, Port::H);

  Port branch_I = Port::O;
  Port branch_II = Port::H;
  for (int k = 0; k < g.mirror_count(); ++k) {
    path_I = mirror_single_branch(path_I, branch_I, blade);
    path_II = mirror_single_branch(path_II, branch_II, blade);
    branch_I = branch_I == Port::O ? Port::H : Port::O;
    branch_II = branch_II == Port::O ? Port::H : Port::O;
  }

  path_I = path_I.shifted(g.defocus_m);
  return {apply_blade(path_I, blade), apply_blade(path_II, blade)};
}

PathPair aligned(PathPair pair) {
  if (pair.psi_I.empty() && pair.psi_II.empty()) return pair;
  if (pair.psi_I.empty()) pair.psi_I = WaveField::zeros(pair.psi_II.lo(), 0);
  if (pair.psi_II.empty()) pair.psi_II = WaveField::zeros(pair.psi_I.lo(), 0);
  long lo = std::min(pair.psi_I.lo(), pair.psi_II.lo());
  long hi = std::max(pair.psi_I.hi(), pair.psi_II.hi());
  pair.psi_I = pair.psi_I.widened(lo, hi);
  pair.psi_II = pair.psi_II.widened(lo, hi);
  return pair;
}

namespace {

bool disjoint(std::pair<long, long> x, std::pair<long, long> y, long offset) {
  return x.second + offset < y.first || y.second < x.first + offset;
}

}  // namespace

PathPair run_paths(const Geometry& g, Port port) {
  ExitFields exit = propagate_paths(g);
  PathPair pair{project(exit.path_I, port), project(exit.path_II, port), port};
  auto s1 = pair.psi_I.support();
  auto s2 = pair.psi_II.support();
  // Only a shift that separates otherwise overlapping paths is an error.
  if (s1 && s2 && disjoint(*s1, *s2, 0) && !disjoint(*s1, *s2, -g.defocus_m))
    throw std::invalid_argument("defocus shift " + std::to_string(g.defocus_m) +
                                " leaves the two path supports disjoint");
  return aligned(std::move(pair));
}

WaveField recombine(const PathPair& pair, double phi) {
  if (pair.psi_I.lo() != pair.psi_II.lo() || pair.psi_I.width() != pair.psi_II.width())
    throw std::invalid_argument("recombine needs both paths on one index frame");
  return pair.psi_I + std::polar(1.0, phi) * pair.psi_II;
}

}  // namespace nisim

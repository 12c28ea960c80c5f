#pragma once

#include <vector>

#include "nisim/interferometer.hpp"

namespace nisim {

struct MPolicy {
  enum class Kind { Fixed, SweepAll, HalfN };
  Kind kind = Kind::Fixed;
  long fixed = 0;

  static MPolicy fixed_at(long m) { return {Kind::Fixed, m}; }
  static MPolicy sweep_all() { return {Kind::SweepAll, 0}; }
  static MPolicy half_n() { return {Kind::HalfN, 0}; }

  /// Shifts evaluated for a blade of n layers. SweepAll spans [-4n, 4n].
  std::vector<long> shifts(int n) const;
};

struct SearchSpace {
  int n_min = 1;
  int n_max = 1;
  std::vector<double> theta_grid;
  MPolicy m_policy;
  Port port = Port::H;
  double xi = 0.0;
  double zeta = 0.0;

  /// Throws std::invalid_argument for an empty range or theta outside (0, pi/2).
  void validate() const;
};

struct SearchResult {
  int n;
  double theta;
  long m;
  double contrast;
};

/// Exhaustive grid evaluation, ranked by contrast (descending) with ties
/// broken by smaller N, then smaller theta, then smaller m. The ranking does
/// not depend on how many workers evaluated it.
std::vector<SearchResult> grid_search(const SearchSpace& space, GeometryKind kind);

}  // namespace nisim

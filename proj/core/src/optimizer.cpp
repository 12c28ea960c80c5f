#include "nisim/optimizer.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "nisim/analysis.hpp"
#include "nisim/parallel.hpp"

namespace nisim {

std::vector<long> MPolicy::shifts(int n) const {
  switch (kind) {
    case Kind::Fixed:
      return {fixed};
    case Kind::HalfN:
      return {n / 2};
    case Kind::SweepAll: {
      std::vector<long> out;
      for (long m = -4L * n; m <= 4L * n; ++m) out.push_back(m);
      return out;
    }
  }
  return {};
}

void SearchSpace::validate() const {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("empty layer-count range");
  if (theta_grid.empty()) throw std::invalid_argument("empty theta grid");
  for (double t : theta_grid)
    if (!(t > 0.0 && t < std::numbers::pi / 2)) throw std::invalid_argument("theta grid values must lie in (0, pi/2)");
}

std::vector<SearchResult> grid_search(const SearchSpace& space, GeometryKind kind) {
  space.validate();
  struct Point {
    int n;
    double theta;
  };
  std::vector<Point> points;
  for (int n = space.n_min; n <= space.n_max; ++n)
    for (double t : space.theta_grid) points.push_back({n, t});

  std::vector<std::vector<SearchResult>> per_point(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const Point pt = points[i];
    Geometry g{kind, BladeParams(pt.n, pt.theta, space.xi, space.zeta), 0, 0.0};
    ExitFields exit = propagate_paths(g);
    PathPair pair{project(exit.path_I, space.port), project(exit.path_II, space.port), space.port};
    for (long m : space.m_policy.shifts(pt.n)) {
      Geometry check = g;
      check.defocus_m = m;
      check.validate();
      per_point[i].push_back({pt.n, pt.theta, m, coherence_contrast(pair, m)});
    }
  });

  std::vector<SearchResult> ranked;
  for (auto& v : per_point) ranked.insert(ranked.end(), v.begin(), v.end());
  std::sort(ranked.begin(), ranked.end(), [](const SearchResult& a, const SearchResult& b) {
    if (a.contrast != b.contrast) return a.contrast > b.contrast;
    if (a.n != b.n) return a.n < b.n;
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.m < b.m;
  });
  return ranked;
}

}  // namespace nisim

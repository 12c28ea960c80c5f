#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "nisim/analysis.hpp"
#include "nisim/error.hpp"
#include "test_support.hpp"

using namespace nisim;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<FringeSample> sinusoid(double A, double B, double phase, int K) {
  std::vector<FringeSample> s;
  for (int k = 0; k < K; ++k) {
    double phi = 2 * kPi * k / K;
    s.push_back({phi, A + B * std::cos(phi - phase)});
  }
  return s;
}

Geometry reference(long m = 0) {
  Geometry g;
  g.kind = GeometryKind::FourBladeDFS;
  g.blade = BladeParams(44, kPi / 64);
  g.defocus_m = m;
  return g;
}

double phase_distance(double a, double b) { return std::abs(wrap_phase(a - b)); }

}  // namespace

TEST_CASE("fit recovers exact sinusoids") {
  FringeFit f = fit_fringe(sinusoid(2.0, 1.0, 0.0, 8));
  CHECK(f.A == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.B == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(f.phase) < 1e-14);

  FringeFit g = fit_fringe(sinusoid(3.0, 0.4, -2.5, 16));
  CHECK(g.A == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(g.B == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(phase_distance(g.phase, -2.5) < 1e-13);

  // Negative amplitude is reported as a half-turn phase shift.
  FringeFit h = fit_fringe(sinusoid(1.0, -0.5, 0.0, 5));
  CHECK(h.B == doctest::Approx(0.5));
  CHECK(phase_distance(h.phase, kPi) < 1e-13);
}

TEST_CASE("flat fringe reports zero phase") {
  FringeFit f = fit_fringe(sinusoid(5.0, 0.0, 1.0, 8));
  CHECK(f.A == doctest::Approx(5.0));
  CHECK(std::abs(f.B) < 1e-14);
  CHECK(f.phase == 0.0);
  CHECK(contrast(f) < 1e-14);
}

TEST_CASE("fit rejects degenerate input") {
  std::vector<FringeSample> two{{0.0, 1.0}, {1.0, 2.0}};
  CHECK_THROWS_AS(fit_fringe(two), std::invalid_argument);
  std::vector<FringeSample> same{{0.5, 1.0}, {0.5, 2.0}, {0.5, 3.0}, {0.5, 1.5}};
  CHECK_THROWS_AS(fit_fringe(same), std::invalid_argument);
}

TEST_CASE("fit with pinned phase keeps the sign") {
  auto s = sinusoid(2.0, 0.7, 0.3, 16);
  FringeFit same = fit_fringe_at(s, 0.3);
  CHECK(same.B == doctest::Approx(0.7));
  FringeFit opposite = fit_fringe_at(s, 0.3 + kPi);
  CHECK(opposite.B == doctest::Approx(-0.7));
  CHECK(opposite.A == doctest::Approx(2.0));
}

TEST_CASE("contrast examples") {
  CHECK(contrast({1.0, 1.0, 0.0}) == 1.0);
  CHECK(contrast({1.0, 0.0, 0.0}) == 0.0);
  CHECK(contrast({2.0, -0.5, 0.0}) == 0.25);
  CHECK_THROWS_AS(contrast({0.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(contrast({-1.0, 0.5, 0.0}), std::invalid_argument);

  // (Imax - Imin) / (Imax + Imin) for a sampled sinusoid.
  FringeFit f = fit_fringe(sinusoid(4.0, 1.5, 0.0, 16));
  CHECK(contrast(f) == doctest::Approx((5.5 - 2.5) / (5.5 + 2.5)));
}

TEST_CASE("coherence examples") {
  std::mt19937_64 rng(31);
  PathPair twin;
  twin.psi_I = nisim::testing::random_field(rng, -3, 6);
  twin.psi_II = twin.psi_I;
  cplx g = coherence(twin);
  CHECK(std::abs(g.imag()) < 1e-15);
  CHECK(g.real() == doctest::Approx(norm(twin.psi_I)));
  CHECK(coherence_contrast(twin) == doctest::Approx(1.0));

  PathPair apart = aligned({prepare_input(-4, Branch::A), prepare_input(4, Branch::A), Port::O});
  CHECK(coherence(apart) == cplx(0.0));
  // Moving path I up by eight nodes lines the two up.
  CHECK(coherence(apart, 8) == cplx(1.0));
  CHECK(coherence(apart, -8) == cplx(0.0));
}

TEST_CASE("fringe phase follows the coherence") {
  std::mt19937_64 rng(32);
  PathPair pair = aligned(
      {nisim::testing::random_field(rng, -2, 5), nisim::testing::random_field(rng, 0, 4), Port::H});
  cplx gamma = coherence(pair);
  FringeFit fit = fit_fringe(sample_fringe(pair));
  CHECK(fit.A == doctest::Approx(norm(pair.psi_I) + norm(pair.psi_II)).epsilon(1e-13));
  CHECK(fit.B == doctest::Approx(2 * std::abs(gamma)).epsilon(1e-12));
  CHECK(phase_distance(fit.phase, std::arg(gamma)) < 1e-12);
}

TEST_CASE("fit and coherence contrast agree on random geometries") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> th(0.05, kPi / 2 - 0.05), ph(-kPi, kPi);
  std::uniform_int_distribution<int> layers(1, 60);
  for (int trial = 0; trial < 20; ++trial) {
    Geometry g;
    g.kind = trial % 2 ? GeometryKind::ThreeBladeMZ : GeometryKind::FourBladeDFS;
    const int n = layers(rng);
    g.blade = BladeParams(n, th(rng), ph(rng), ph(rng));
    g.defocus_m = std::uniform_int_distribution<long>(-n, n)(rng);
    for (Port port : {Port::O, Port::H}) {
      PathPair pair = run_paths(g, port);
      if (norm(pair.psi_I) + norm(pair.psi_II) == 0.0) continue;
      double fitted = contrast(fit_fringe(sample_fringe(pair, 16)));
      CHECK(std::abs(fitted - coherence_contrast(pair)) < 1e-9);
      CHECK(coherence_contrast(pair) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("coherence lag matches a shifted propagation") {
  Geometry g = reference();
  PathPair base = run_paths(g, Port::H);
  for (long m : {-6L, 3L, 22L}) {
    PathPair shifted = run_paths(reference(m), Port::H);
    CHECK(std::abs(coherence(base, m) - coherence(shifted)) < 1e-13);
  }
}

TEST_CASE("reference geometry fringe") {
  PathPair pair = run_paths(reference(), Port::H);
  double c = contrast(fit_fringe(sample_fringe(pair)));
  MESSAGE("H-port contrast at m = 0: " << c);
  CHECK(c > 0.6);
  CHECK(c < 0.8);
}

TEST_CASE("defocus sweep at the reference blade") {
  auto sweep = defocus_sweep(reference(), 0, 44);
  REQUIRE(sweep.size() == 45);
  double peak = 0.0;
  for (const auto& p : sweep) {
    CHECK(p.contrast_H >= p.contrast_O - 1e-9);
    CHECK(p.contrast_H <= 1.0 + 1e-12);
    peak = std::max(peak, p.contrast_H);
    // A single-node input reaches each exit node on one parity only.
    if (p.m % 2) CHECK(p.contrast_H == 0.0);
  }
  // Defocus must beat the focused setting.
  CHECK(sweep[22].contrast_H > sweep[0].contrast_H);
  CHECK(std::abs(sweep[0].contrast_H - coherence_contrast(run_paths(reference(), Port::H))) < 1e-12);
  CHECK(std::abs(std::abs(sweep[10].gamma_H) * 2 / (norm(run_paths(reference(), Port::H).psi_I) +
                                                    norm(run_paths(reference(), Port::H).psi_II)) -
                 sweep[10].contrast_H) < 1e-12);
}

TEST_CASE("defocus sweep range checks") {
  Geometry g;
  g.kind = GeometryKind::ThreeBladeMZ;
  g.blade = BladeParams(5, 0.4);
  CHECK_THROWS_AS(defocus_sweep(g, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(defocus_sweep(g, 0, 21), std::invalid_argument);
  CHECK(defocus_sweep(g, -20, 20).size() == 41);
}

TEST_CASE("profile moments") {
  Profile p{-2, {1.0, 0.0, 2.0, 0.0, 1.0}};
  CHECK(p.total() == 4.0);
  CHECK(p.centroid() == doctest::Approx(0.0));
  CHECK(p.rms_spread() == doctest::Approx(std::sqrt(2.0)));

  Profile q{10, {0.0, 3.0}};
  CHECK(q.centroid() == doctest::Approx(11.0));
  CHECK(q.rms_spread() == doctest::Approx(0.0));
}

TEST_CASE("profile sums match the fringe") {
  Geometry g = reference(4);
  for (Port port : {Port::O, Port::H}) {
    PathPair pair = run_paths(g, port);
    FringeFit fit = fit_fringe(sample_fringe(pair));
    for (double phi : {0.0, 0.9, kPi}) {
      Profile prof = exit_profile(g, port, phi);
      CHECK(std::abs(prof.total() - norm(recombine(pair, phi))) < 1e-12);
      CHECK(std::abs(prof.total() - fit(phi)) < 1e-12);
      for (double v : prof.intensity) CHECK(v >= 0.0);
    }
  }
  ExitFields e = propagate_paths(g);
  Profile a = exit_profile(g, Port::H, 0.4), b = exit_profile(e, Port::H, 0.4);
  CHECK(a.lo == b.lo);
  CHECK(a.intensity == b.intensity);
}

TEST_CASE("perfect reflection gives a single-node profile") {
  Geometry g;
  g.kind = GeometryKind::ThreeBladeMZ;
  g.blade = BladeParams(1, kPi / 2);
  Profile p = exit_profile(g, Port::H, 0.0);
  int lit = 0;
  for (double v : p.intensity) lit += v > 0.0;
  CHECK(lit == 1);
  CHECK(p.total() == doctest::Approx(1.0));
}

#pragma once

#include "nisim/wavefield.hpp"

namespace nisim {

/// Exit beam. O collects the upward (A) branch, H the downward (B) branch.
enum class Port { O, H };

enum class GeometryKind { ThreeBladeMZ, FourBladeDFS };

/// Interferometer built from identical blades.
///
/// defocus_m shifts path I by m nodes (toward larger j for m > 0) before the
/// final blade; control_phase multiplies path II at recombination.
struct Geometry {
  GeometryKind kind = GeometryKind::FourBladeDFS;
  BladeParams blade{44, 0.0};
  long defocus_m = 0;
  double control_phase = 0.0;

  /// Throws std::invalid_argument when |defocus_m| > 4 N.
  void validate() const;
  int mirror_count() const { return kind == GeometryKind::FourBladeDFS ? 2 : 1; }
};

/// Fields reaching the exit via each path, before the control phase.
struct PathPair {
  WaveField psi_I;
  WaveField psi_II;
  Port port = Port::H;
};

/// Exit fields of both paths on both branches (no port projection yet).
struct ExitFields {
  WaveField path_I;
  WaveField path_II;
};

/// Keeps only the A branch (O) or only the B branch (H).
WaveField project(const WaveField& psi, Port port);

/// Post-selected middle blade: P^H U P^O + P^O U P^H.
WaveField apply_mirror(const WaveField& psi, const BladeParams& p);

/// Propagates |a_0> through the geometry with the two paths tracked
/// separately. Path I is the transmitted (A) component after the first blade.
ExitFields propagate_paths(const Geometry& g);

/// Port-projected exit fields on a common index window. Throws
/// std::invalid_argument when the defocus shift moves two overlapping path
/// supports apart.
PathPair run_paths(const Geometry& g, Port port);

/// Puts both fields of the pair onto their union window.
PathPair aligned(PathPair pair);

/// psi_I + e^{i phi} psi_II. Throws std::invalid_argument if the frames of the
/// pair differ.
WaveField recombine(const PathPair& pair, double phi);

}  // namespace nisim

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace nisim {

using cplx = std::complex<double>;

/// Ray direction on the coarse-grained lattice: A moves upward (k_y > 0) and
/// steps to j+1 per layer, B moves downward and steps to j-1.
enum class Branch { A, B };

/// Two-component amplitude field over the signed node index j.
///
/// Storage is a dense window [lo, lo + width) shared by both branches.
/// Nodes outside the window have zero amplitude, so the field is always
/// well defined on the whole (open, non-periodic) lattice.
class WaveField {
 public:
  WaveField() = default;
  WaveField(long lo, std::vector<cplx> a, std::vector<cplx> b);

  static WaveField zeros(long lo, std::size_t width);

  long lo() const { return lo_; }
  /// One past the last stored node.
  long hi() const { return lo_ + static_cast<long>(a_.size()); }
  std::size_t width() const { return a_.size(); }
  bool empty() const { return a_.empty(); }

  /// alpha_j / beta_j, zero outside the stored window.
  cplx alpha(long j) const;
  cplx beta(long j) const;
  cplx amplitude(Branch br, long j) const { return br == Branch::A ? alpha(j) : beta(j); }

  std::span<const cplx> a() const { return a_; }
  std::span<const cplx> b() const { return b_; }
  std::span<cplx> a() { return a_; }
  std::span<cplx> b() { return b_; }

  /// Same amplitudes moved by m nodes; positive m moves toward larger j.
  WaveField shifted(long m) const;

  /// Re-expressed on the window [new_lo, new_hi), which must contain the
  /// current window.
  WaveField widened(long new_lo, long new_hi) const;

  /// [first, last] nodes with |amplitude| > tol on either branch; nullopt if
  /// the field is identically zero (up to tol).
  std::optional<std::pair<long, long>> support(double tol = 0.0) const;

  bool all_finite() const;

  WaveField& operator+=(const WaveField& other);
  WaveField& operator*=(cplx c);

 private:
  long lo_ = 0;
  std::vector<cplx> a_;
  std::vector<cplx> b_;
};

WaveField operator+(WaveField lhs, const WaveField& rhs);
WaveField operator*(cplx c, WaveField f);

/// Parameters of one crystal blade in the coarse-grained walk: N layers of
/// the node unitary with mixing angle theta, transmission phase xi and
/// reflection phase zeta. Phases are wrapped into (-pi, pi].
class BladeParams {
 public:
  BladeParams(int layers, double theta, double xi = 0.0, double zeta = 0.0);

  int layers() const { return layers_; }
  double theta() const { return theta_; }
  double xi() const { return xi_; }
  double zeta() const { return zeta_; }

 private:
  int layers_;
  double theta_;
  double xi_;
  double zeta_;
};

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

/// The 2x2 node unitary
///   a_{j+1} <- e^{i xi} cos(theta) a_j + e^{i zeta} sin(theta) b_j
///   b_{j-1} <- -e^{-i zeta} sin(theta) a_j + e^{-i xi} cos(theta) b_j
struct NodeUnitary {
  cplx a_from_a;
  cplx a_from_b;
  cplx b_from_a;
  cplx b_from_b;

  static NodeUnitary from(const BladeParams& p);
};

/// Unit amplitude on one branch at node j0.
WaveField prepare_input(long j0, Branch branch);

/// Sum over nodes of |alpha_j|^2 + |beta_j|^2.
double norm(const WaveField& psi);

/// One layer of the node unitary at every node. The output window is one
/// node wider on each side. Throws std::invalid_argument on non-finite input.
WaveField apply_layer(const WaveField& psi, const BladeParams& p);

/// p.layers() successive layers.
WaveField apply_blade(const WaveField& psi, const BladeParams& p);

}  // namespace nisim

#include "nisim/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nisim {

namespace {

// Explicit arithmetic keeps the hot loop free of the NaN-recovery path that
// std::complex multiplication takes under strict IEEE semantics.
inline cplx mul_add(cplx c1, cplx x, cplx c2, cplx y) {
  return {c1.real() * x.real() - c1.imag() * x.imag() + c2.real() * y.real() - c2.imag() * y.imag(),
          c1.real() * x.imag() + c1.imag() * x.real() + c2.real() * y.imag() + c2.imag() * y.real()};
}

// One layer on buffers that share the absolute slot frame. Input occupies
// slots [first, last); output occupies [first - 1, last + 1).
void layer_kernel(const NodeUnitary& u, const cplx* a, const cplx* b, cplx* na, cplx* nb,
                  std::size_t first, std::size_t last) {
  na[first - 1] = 0.0;
  na[first] = 0.0;
  nb[last - 1] = 0.0;
  nb[last] = 0.0;
  for (std::size_t p = first; p < last; ++p) na[p + 1] = mul_add(u.a_from_a, a[p], u.a_from_b, b[p]);
  for (std::size_t p = first; p < last; ++p) nb[p - 1] = mul_add(u.b_from_a, a[p], u.b_from_b, b[p]);
}

void require_finite(const WaveField& psi) {
  if (!psi.all_finite()) throw std::invalid_argument("wavefield contains non-finite amplitudes");
}

}  // namespace

WaveField::WaveField(long lo, std::vector<cplx> a, std::vector<cplx> b)
    : lo_(lo), a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) throw std::invalid_argument("wavefield branches differ in length");
}

WaveField WaveField::zeros(long lo, std::size_t width) {
  return WaveField(lo, std::vector<cplx>(width), std::vector<cplx>(width));
}

cplx WaveField::alpha(long j) const {
  if (j < lo_ || j >= hi()) return 0.0;
  return a_[static_cast<std::size_t>(j - lo_)];
}

cplx WaveField::beta(long j) const {
  if (j < lo_ || j >= hi()) return 0.0;
  return b_[static_cast<std::size_t>(j - lo_)];
}

WaveField WaveField::shifted(long m) const {
  WaveField out = *this;
  out.lo_ += m;
  return out;
}

WaveField WaveField::widened(long new_lo, long new_hi) const {
  if (empty()) return zeros(new_lo, static_cast<std::size_t>(std::max(0L, new_hi - new_lo)));
  if (new_lo > lo_ || new_hi < hi()) throw std::invalid_argument("widened window must contain the field");
  WaveField out = zeros(new_lo, static_cast<std::size_t>(new_hi - new_lo));
  auto offset = static_cast<std::size_t>(lo_ - new_lo);
  std::copy(a_.begin(), a_.end(), out.a_.begin() + static_cast<std::ptrdiff_t>(offset));
  std::copy(b_.begin(), b_.end(), out.b_.begin() + static_cast<std::ptrdiff_t>(offset));
  return out;
}

std::optional<std::pair<long, long>> WaveField::support(double tol) const {
  auto populated = [&](std::size_t k) { return std::abs(a_[k]) > tol || std::abs(b_[k]) > tol; };
  std::size_t n = a_.size();
  std::size_t first = 0;
  while (first < n && !populated(first)) ++first;
  if (first == n) return std::nullopt;
  std::size_t last = n - 1;
  while (!populated(last)) --last;
  return std::pair{lo_ + static_cast<long>(first), lo_ + static_cast<long>(last)};
}

bool WaveField::all_finite() const {
  auto finite = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  return std::all_of(a_.begin(), a_.end(), finite) && std::all_of(b_.begin(), b_.end(), finite);
}

WaveField& WaveField::operator+=(const WaveField& other) {
  if (other.empty()) return *this;
  if (empty()) return *this = other;
  long new_lo = std::min(lo_, other.lo_);
  long new_hi = std::max(hi(), other.hi());
  if (new_lo != lo_ || new_hi != hi()) *this = widened(new_lo, new_hi);
  auto offset = static_cast<std::size_t>(other.lo_ - lo_);
  for (std::size_t k = 0; k < other.width(); ++k) {
    a_[offset + k] += other.a_[k];
    b_[offset + k] += other.b_[k];
  }
  return *this;
}

WaveField& WaveField::operator*=(cplx c) {
  for (auto& z : a_) z *= c;
  for (auto& z : b_) z *= c;
  return *this;
}

WaveField operator+(WaveField lhs, const WaveField& rhs) { return lhs += rhs; }

WaveField operator*(cplx c, WaveField f) { return f *= c; }

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(angle, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

BladeParams::BladeParams(int layers, double theta, double xi, double zeta)
    : layers_(layers), theta_(theta), xi_(wrap_phase(xi)), zeta_(wrap_phase(zeta)) {
  if (layers < 1) throw std::invalid_argument("blade needs at least one layer, got " + std::to_string(layers));
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
    throw std::invalid_argument("blade mixing angle must lie in [0, pi/2]");
  if (!std::isfinite(xi) || !std::isfinite(zeta)) throw std::invalid_argument("blade phases must be finite");
}

NodeUnitary NodeUnitary::from(const BladeParams& p) {
  double c = std::cos(p.theta());
  double s = std::sin(p.theta());
  // Exact endpoints so pure transmission / reflection stay exact.
  if (p.theta() == 0.0) s = 0.0;
  if (p.theta() == std::numbers::pi / 2) c = 0.0;
  return {std::polar(c, p.xi()), std::polar(s, p.zeta()), -std::polar(s, -p.zeta()), std::polar(c, -p.xi())};
}

WaveField prepare_input(long j0, Branch branch) {
  WaveField f = WaveField::zeros(j0, 1);
  (branch == Branch::A ? f.a() : f.b())[0] = 1.0;
  return f;
}

double norm(const WaveField& psi) {
  double sum = 0.0;
  for (auto z : psi.a()) sum += std::norm(z);
  for (auto z : psi.b()) sum += std::norm(z);
  return sum;
}

WaveField apply_layer(const WaveField& psi, const BladeParams& p) {
  require_finite(psi);
  return apply_blade(psi, BladeParams(1, p.theta(), p.xi(), p.zeta()));
}

WaveField apply_blade(const WaveField& psi, const BladeParams& p) {
  require_finite(psi);
  const auto layers = static_cast<std::size_t>(p.layers());
  const std::size_t w = psi.width();
  const std::size_t total = w + 2 * layers;
  const NodeUnitary u = NodeUnitary::from(p);

  // Both buffers span the final window; the live region grows by one slot
  // per side each layer.
  std::vector<cplx> a(total), b(total), na(total), nb(total);
  std::copy(psi.a().begin(), psi.a().end(), a.begin() + static_cast<std::ptrdiff_t>(layers));
  std::copy(psi.b().begin(), psi.b().end(), b.begin() + static_cast<std::ptrdiff_t>(layers));

  std::size_t first = layers;
  std::size_t last = layers + w;
  for (std::size_t s = 0; s < layers; ++s) {
    layer_kernel(u, a.data(), b.data(), na.data(), nb.data(), first, last);
    std::swap(a, na);
    std::swap(b, nb);
    --first;
    ++last;
  }
  return WaveField(psi.lo() - static_cast<long>(layers), std::move(a), std::move(b));
}

}  // namespace nisim

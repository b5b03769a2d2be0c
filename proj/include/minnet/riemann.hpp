#pragma once

#include <cmath>
#include <complex>

namespace minnet {

using Complex = std::complex<double>;

/// A point of the Riemann sphere C ∪ {∞}. Infinity is an explicit tag; the
/// complex payload is ignored when `inf` is set.
struct CInf {
  Complex z{0.0, 0.0};
  bool inf{false};

  constexpr CInf() = default;
  constexpr CInf(Complex value) : z(value) {}  // NOLINT(google-explicit-constructor)
  constexpr CInf(double re, double im = 0.0) : z(re, im) {}

  static constexpr CInf infinity() {
    CInf c;
    c.inf = true;
    return c;
  }

  [[nodiscard]] constexpr bool is_inf() const noexcept { return inf; }
  [[nodiscard]] bool finite() const noexcept { return !inf && std::isfinite(z.real()) && std::isfinite(z.imag()); }

  friend bool operator==(const CInf& a, const CInf& b) noexcept {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.z == b.z;
  }
};

/// a / b as a * conj(b) / |b|^2. Unlike the scaled library division this is
/// exact whenever the true quotient of two Gaussian integers is one.
inline Complex cdiv(Complex a, Complex b) { return a * std::conj(b) / std::norm(b); }

/// Homogeneous coordinates [num : den] of a sphere point; ∞ = [1 : 0].
struct Homogeneous {
  Complex num;
  Complex den;

  static Homogeneous of(const CInf& c) { return c.inf ? Homogeneous{1.0, 0.0} : Homogeneous{c.z, 1.0}; }
};

/// Bracket [a, b] = a.num * b.den - b.num * a.den; equals a - b for finite points.
inline Complex bracket(const Homogeneous& a, const Homogeneous& b) { return a.num * b.den - b.num * a.den; }

/// Back to C∞. A denominator that vanishes relative to the numerator is ∞.
inline CInf from_homogeneous(const Homogeneous& h, double rel_eps = 1e-15) {
  if (std::abs(h.den) <= rel_eps * std::abs(h.num)) return CInf::infinity();
  return CInf(cdiv(h.num, h.den));
}

/// Spherical (chordal) distance between two points of C∞, in [0, 2].
inline double chordal_distance(const CInf& a, const CInf& b) {
  if (a.inf && b.inf) return 0.0;
  if (a.inf) return 2.0 / std::sqrt(1.0 + std::norm(b.z));
  if (b.inf) return 2.0 / std::sqrt(1.0 + std::norm(a.z));
  return 2.0 * std::abs(a.z - b.z) / std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
}

}  // namespace minnet

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "minnet/error.hpp"
#include "minnet/geometry.hpp"
#include "minnet/quaternion.hpp"
#include "minnet/riemann.hpp"

namespace minnet {

/// Minimum separation of consecutive points in a cross ratio.
inline constexpr double kMinSeparation = 1e-12;

/// Relative bound on |imaginary part| below which a quaternionic cross ratio
/// counts as real (the four points are concircular).
inline constexpr double kConcircularTol = 1e-9;

/// The eigenvalue pair {re ± i im_mag} of a quaternionic cross ratio.
struct CrossRatioValue {
  double re{0.0};
  double im_mag{0.0};

  [[nodiscard]] bool is_real(double tol = kConcircularTol) const { return im_mag <= tol * std::max(1.0, std::abs(re)); }
};

/// Cross ratio (X1 - X2)(X2 - X3)^-1 (X3 - X4)(X4 - X1)^-1 of four points
/// embedded as pure imaginary quaternions.
inline CrossRatioValue cross_ratio_quat(const Vec3& x1, const Vec3& x2, const Vec3& x3, const Vec3& x4) {
  const std::array<Vec3, 4> d{x1 - x2, x2 - x3, x3 - x4, x4 - x1};
  for (const auto& v : d) {
    if (v.norm() <= kMinSeparation) fail(Errc::degenerate_quad, "consecutive points coincide in cross ratio");
  }
  const Quat q = Quat::pure(d[0]) * Quat::pure(d[1]).inverse() * Quat::pure(d[2]) * Quat::pure(d[3]).inverse();
  return {q.w, q.imag_norm()};
}

/// Complex cross ratio with ∞ handled through homogeneous brackets:
/// [12][34] / ([23][41]).
inline CInf cross_ratio_complex(const CInf& g1, const CInf& g2, const CInf& g3, const CInf& g4) {
  const auto h1 = Homogeneous::of(g1), h2 = Homogeneous::of(g2), h3 = Homogeneous::of(g3), h4 = Homogeneous::of(g4);
  const std::array<std::pair<const CInf*, const CInf*>, 4> pairs{{{&g1, &g2}, {&g2, &g3}, {&g3, &g4}, {&g4, &g1}}};
  for (const auto& [a, b] : pairs) {
    if (a->inf && b->inf) fail(Errc::degenerate_quad, "consecutive values both at infinity");
    if (!a->inf && !b->inf) {
      const double scale = std::max({1.0, std::abs(a->z), std::abs(b->z)});
      if (std::abs(a->z - b->z) <= kMinSeparation * scale) fail(Errc::degenerate_quad, "consecutive values coincide");
    }
  }
  const Complex num = bracket(h1, h2) * bracket(h3, h4);
  const Complex den = bracket(h2, h3) * bracket(h4, h1);
  return CInf(cdiv(num, den));
}

/// Inverse stereographic projection from the north pole onto the unit sphere.
inline Vec3 stereographic_lift(const CInf& g) {
  if (g.inf) return {0.0, 0.0, 1.0};
  const double r2 = std::norm(g.z);
  return Vec3(2.0 * g.z.real(), 2.0 * g.z.imag(), r2 - 1.0) / (r2 + 1.0);
}

/// Stereographic projection of a unit vector; the north pole maps to ∞.
inline CInf stereographic_project(const Vec3& n) {
  const double denom = 1.0 - n.z();
  if (std::abs(denom) <= 1e-15) return CInf::infinity();
  return CInf(Complex(n.x(), n.y()) / denom);
}

/// Möbius transformation z -> (a z + b) / (c z + d) of the Riemann sphere.
struct MobiusMap {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static MobiusMap similarity(Complex scale, Complex shift) { return {scale, shift, 0.0, 1.0}; }
  static MobiusMap translation(Complex shift) { return {1.0, shift, 0.0, 1.0}; }
  static MobiusMap inversion() { return {0.0, 1.0, 1.0, 0.0}; }

  [[nodiscard]] CInf operator()(const CInf& g) const {
    const auto h = Homogeneous::of(g);
    return from_homogeneous({a * h.num + b * h.den, c * h.num + d * h.den});
  }

  [[nodiscard]] bool is_similarity() const { return c == Complex(0.0); }
};

}  // namespace minnet

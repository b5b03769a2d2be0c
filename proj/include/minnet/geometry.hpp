#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "minnet/error.hpp"

namespace minnet {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// ---------------------------------------------------------------------------
// Planes and lines
// ---------------------------------------------------------------------------

/// Plane {p : normal . p = offset} with unit normal.
struct PlaneR3 {
  Vec3 normal{0.0, 0.0, 1.0};
  double offset{0.0};

  static PlaneR3 through(const Vec3& point, const Vec3& normal) {
    const Vec3 n = normal.normalized();
    return {n, n.dot(point)};
  }

  [[nodiscard]] double signed_distance(const Vec3& p) const { return normal.dot(p) - offset; }
};

/// Line base + s * direction with unit direction.
struct LineR3 {
  Vec3 base{Vec3::Zero()};
  Vec3 direction{0.0, 0.0, 1.0};

  static LineR3 through(const Vec3& point, const Vec3& direction) { return {point, direction.normalized()}; }

  [[nodiscard]] double distance(const Vec3& p) const {
    const Vec3 d = p - base;
    return (d - direction * direction.dot(d)).norm();
  }
};

// ---------------------------------------------------------------------------
// Isometry
// ---------------------------------------------------------------------------

/// Rigid motion p -> linear * p + translation, tagged with how it was made.
struct Isometry {
  enum class Kind { identity, plane_reflection, line_rotation_180, composition };

  Kind kind{Kind::identity};
  Mat3 linear{Mat3::Identity()};
  Vec3 translation{Vec3::Zero()};

  static Isometry identity() { return {}; }

  static Isometry reflection(const PlaneR3& plane) {
    const Vec3& n = plane.normal;
    return {Kind::plane_reflection, Mat3::Identity() - 2.0 * n * n.transpose(), 2.0 * plane.offset * n};
  }

  static Isometry rotation_180(const LineR3& line) {
    const Vec3& u = line.direction;
    const Mat3 proj = u * u.transpose();
    return {Kind::line_rotation_180, 2.0 * proj - Mat3::Identity(), 2.0 * (Mat3::Identity() - proj) * line.base};
  }

  [[nodiscard]] Vec3 apply(const Vec3& p) const { return linear * p + translation; }
  [[nodiscard]] Vec3 apply_linear(const Vec3& v) const { return linear * v; }
  [[nodiscard]] double determinant() const { return linear.determinant(); }

  /// (*this) ∘ inner
  [[nodiscard]] Isometry compose(const Isometry& inner) const {
    return {Kind::composition, linear * inner.linear, linear * inner.translation + translation};
  }

  /// Max-norm distance between the affine maps; translations are divided by `scale`.
  [[nodiscard]] double distance(const Isometry& o, double scale = 1.0) const {
    const double dm = (linear - o.linear).cwiseAbs().maxCoeff();
    const double dt = (translation - o.translation).cwiseAbs().maxCoeff() / scale;
    return std::max(dm, dt);
  }
};

// ---------------------------------------------------------------------------
// Least-squares fits
// ---------------------------------------------------------------------------

struct PlaneFit {
  PlaneR3 plane;
  double max_residual{0.0};
};

struct LineFit {
  LineR3 line;
  double max_residual{0.0};
};

namespace detail {

// Deterministic sign: the largest-magnitude component is positive.
inline Vec3 canonical_sign(Vec3 v) {
  Eigen::Index i = 0;
  v.cwiseAbs().maxCoeff(&i);
  return v[i] < 0.0 ? Vec3(-v) : v;
}

inline Vec3 centroid(std::span<const Vec3> pts) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  return c / static_cast<double>(pts.size());
}

inline Eigen::SelfAdjointEigenSolver<Mat3> scatter_eigen(std::span<const Vec3> pts, const Vec3& center) {
  Mat3 s = Mat3::Zero();
  for (const auto& p : pts) {
    const Vec3 d = p - center;
    s += d * d.transpose();
  }
  return Eigen::SelfAdjointEigenSolver<Mat3>(s);
}

}  // namespace detail

/// Orthogonal least-squares plane; residual is the max point-plane distance.
inline PlaneFit fit_plane(std::span<const Vec3> pts) {
  if (pts.size() < 3) fail(Errc::degenerate_fit, "plane fit needs at least 3 points");
  const Vec3 c = detail::centroid(pts);
  const auto es = detail::scatter_eigen(pts, c);
  const auto& ev = es.eigenvalues();  // ascending
  if (ev[2] <= 0.0 || ev[1] <= 1e-14 * ev[2]) fail(Errc::degenerate_fit, "points are collinear or coincident");
  const Vec3 n = detail::canonical_sign(es.eigenvectors().col(0).normalized());
  PlaneFit fit{PlaneR3{n, n.dot(c)}, 0.0};
  for (const auto& p : pts) fit.max_residual = std::max(fit.max_residual, std::abs(fit.plane.signed_distance(p)));
  return fit;
}

/// Least-squares plane constrained to pass through the origin.
inline PlaneFit fit_plane_through_origin(std::span<const Vec3> pts) {
  if (pts.size() < 2) fail(Errc::degenerate_fit, "origin plane fit needs at least 2 points");
  const auto es = detail::scatter_eigen(pts, Vec3::Zero());
  const auto& ev = es.eigenvalues();
  if (ev[2] <= 0.0 || ev[1] <= 1e-14 * ev[2]) fail(Errc::degenerate_fit, "points span no plane with the origin");
  const Vec3 n = detail::canonical_sign(es.eigenvectors().col(0).normalized());
  PlaneFit fit{PlaneR3{n, 0.0}, 0.0};
  for (const auto& p : pts) fit.max_residual = std::max(fit.max_residual, std::abs(n.dot(p)));
  return fit;
}

inline LineFit fit_line(std::span<const Vec3> pts) {
  if (pts.size() < 2) fail(Errc::degenerate_fit, "line fit needs at least 2 points");
  const Vec3 c = detail::centroid(pts);
  const auto es = detail::scatter_eigen(pts, c);
  if (es.eigenvalues()[2] <= 0.0) fail(Errc::degenerate_fit, "points coincide");
  LineFit fit{LineR3{c, detail::canonical_sign(es.eigenvectors().col(2).normalized())}, 0.0};
  for (const auto& p : pts) fit.max_residual = std::max(fit.max_residual, fit.line.distance(p));
  return fit;
}

/// Distance of the point set from its best plane; 0 when fewer than four
/// points or when they are collinear (any plane through the line fits).
inline double planarity_residual(std::span<const Vec3> pts) {
  if (pts.size() < 4) return 0.0;
  const Vec3 c = detail::centroid(pts);
  const auto es = detail::scatter_eigen(pts, c);
  const auto& ev = es.eigenvalues();
  if (ev[2] <= 0.0 || ev[1] <= 1e-14 * ev[2]) return 0.0;
  const Vec3 n = es.eigenvectors().col(0).normalized();
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, std::abs(n.dot(p - c)));
  return r;
}

/// Largest pairwise distance; the length scale used by relative tolerances.
inline double diameter(std::span<const Vec3> pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

inline double bounding_diagonal(std::span<const Vec3> pts) {
  if (pts.empty()) return 0.0;
  Vec3 lo = pts[0], hi = pts[0];
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

/// Inversion in the sphere |p - center| = radius.
inline Vec3 invert_in_sphere(const Vec3& p, const Vec3& center, double radius) {
  const Vec3 d = p - center;
  return center + d * (radius * radius / d.squaredNorm());
}

}  // namespace minnet

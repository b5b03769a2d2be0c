#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "minnet/geometry.hpp"
#include "minnet/lattice.hpp"
#include "minnet/mobius.hpp"
#include "minnet/parallel.hpp"
#include "minnet/report.hpp"

namespace minnet {

struct CircularityResult {
  bool circular{false};
  double residual{0.0};  ///< relative to the quad diameter
};

/// Distance from p to the circle through a, b, c; +inf for collinear a, b, c.
inline double distance_to_circle(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& p) {
  const Vec3 u = b - a, v = c - a, w = u.cross(v);
  const double w2 = w.squaredNorm();
  if (w2 <= 1e-300) return std::numeric_limits<double>::infinity();
  const Vec3 center = a + (u.squaredNorm() * v - v.squaredNorm() * u).cross(w) / (2.0 * w2);
  const double radius = (a - center).norm();
  const Vec3 normal = w / std::sqrt(w2);
  const Vec3 d = p - center;
  const double h = normal.dot(d);
  const double rho = (d - h * normal).norm();
  return std::hypot(rho - radius, h);
}

/// Concircularity of four points: max(coplanarity, distance of one point
/// to the circle through the other three), divided by the diameter.
inline CircularityResult circularity(const std::array<Vec3, 4>& p, double tol = 1e-9) {
  const double diam = diameter(p);
  if (diam <= 0.0) return {false, 1.0};
  // Circle through the best-conditioned triangle, tested on the remaining point.
  std::size_t drop = 0;
  double best_area = -1.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& a = p[(k + 1) % 4];
    const auto& b = p[(k + 2) % 4];
    const auto& c = p[(k + 3) % 4];
    const double area = (b - a).cross(c - a).norm();
    if (area > best_area) {
      best_area = area;
      drop = k;
    }
  }
  if (best_area <= 1e-24 * diam * diam) return {false, 1.0};
  const double dev = distance_to_circle(p[(drop + 1) % 4], p[(drop + 2) % 4], p[(drop + 3) % 4], p[drop]);
  const double res = std::max(planarity_residual(p), dev) / diam;
  return {res <= tol, res};
}

inline CircularityResult is_circular(const Net3& f, Vertex quad, double tol = 1e-9) {
  if (!f.domain().has_quad(quad)) fail(Errc::invalid_argument, "quad " + to_string(quad) + " not in domain");
  return circularity(f.quad(quad), tol);
}

/// Circularity of every quad.
inline CheckReport check_circular(const Net3& f, double tol = 1e-9) {
  const auto quads = f.domain().quads();
  std::vector<double> res(quads.size());
  parallel_for(quads.size(), [&](std::size_t i) { res[i] = circularity(f.quad(quads[i]), tol).residual; });
  return collect("circularity", tol, quads, res);
}

/// Per-quad |cr(F_i, F_j, F_k, F_l) - alpha(m)/beta(n)| (relative to the
/// label ratio, plus the imaginary part of the quaternionic cross ratio).
/// Throws NotCircular if some quad is not circular within tol.
inline CheckReport is_isothermic(const Net3& f, const EdgeLabels& labels, double tol = 1e-9) {
  if (!labels.compatible_with(f.domain())) fail(Errc::invalid_argument, "edge labels do not cover the domain");
  const auto circ = check_circular(f, tol);
  if (!circ.pass)
    fail(Errc::not_circular, "quad " + to_string(*circ.worst) + " residual " + std::to_string(circ.max_residual));
  const auto quads = f.domain().quads();
  std::vector<double> res(quads.size());
  parallel_for(quads.size(), [&](std::size_t i) {
    const auto q = f.quad(quads[i]);
    const auto cr = cross_ratio_quat(q[0], q[1], q[2], q[3]);
    const double target = labels.ratio(quads[i]);
    res[i] = std::max(std::abs(cr.re - target), cr.im_mag) / std::max(1.0, std::abs(target));
  });
  return collect("isothermic", tol, quads, res);
}

struct ParallelResult {
  bool parallel{true};
  double worst_angle{0.0};  ///< radians, in [0, pi/2]
  std::optional<Vertex> where;
};

/// Edge-parallelity of two nets on the same domain. Antiparallel edges count
/// as parallel; edges that vanish in either net are skipped.
inline ParallelResult are_parallel_meshes(const Net3& f, const Net3& g, double tol = 1e-9) {
  if (!(f.domain() == g.domain())) fail(Errc::domain_mismatch, "nets live on different domains");
  const double sf = net_scale(f) * 1e-12, sg = net_scale(g) * 1e-12;
  ParallelResult out;
  for (const auto& [a, b] : f.domain().edges()) {
    const Vec3 e1 = f[b] - f[a], e2 = g[b] - g[a];
    const double l1 = e1.norm(), l2 = e2.norm();
    if (l1 <= sf || l2 <= sg) continue;
    const double s = std::min(1.0, e1.cross(e2).norm() / (l1 * l2));
    const double angle = std::asin(s);
    if (!out.where || angle > out.worst_angle) {
      out.worst_angle = angle;
      out.where = a;
    }
  }
  out.parallel = out.worst_angle <= tol;
  return out;
}

}  // namespace minnet

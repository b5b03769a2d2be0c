#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "minnet/error.hpp"
#include "minnet/geometry.hpp"
#include "minnet/lattice.hpp"
#include "minnet/parallel.hpp"
#include "minnet/report.hpp"

namespace minnet {

using Quad3 = std::array<Vec3, 4>;

namespace detail {

inline void require_planar(const Quad3& q, double tol, const char* which) {
  const double d = diameter(q);
  if (d <= 0.0) return;
  if (planarity_residual(q) > tol * d) fail(Errc::not_coplanar, std::string(which) + " quad is not planar");
}

}  // namespace detail

/// Mixed area of two parallel quads as an axial vector:
/// (dF_ik x dG_jl + dG_ik x dF_jl) / 4.
inline Vec3 mixed_area(const Quad3& f, const Quad3& g, double planarity_tol = 1e-9) {
  detail::require_planar(f, planarity_tol, "first");
  detail::require_planar(g, planarity_tol, "second");
  const Vec3 f_ik = f[2] - f[0], f_jl = f[3] - f[1];
  const Vec3 g_ik = g[2] - g[0], g_jl = g[3] - g[1];
  return 0.25 * (f_ik.cross(g_jl) + g_ik.cross(f_jl));
}

inline Vec3 quad_area(const Quad3& f, double planarity_tol = 1e-9) { return mixed_area(f, f, planarity_tol); }

struct QuadCurvature {
  double H{0.0};
  double K{0.0};
  double areaF{0.0};  ///< A(F) measured along the quad normal (positive)
  double mixed{0.0};  ///< A(F, N) measured along the same normal
  Vec3 normal{Vec3::UnitZ()};
};

/// Mean and Gaussian curvature of a quad of F with Gauss map quad N.
inline QuadCurvature quad_curvatures(const Quad3& f, const Quad3& n, double planarity_tol = 1e-9) {
  const Vec3 af = quad_area(f, planarity_tol);
  const double d = diameter(f);
  if (af.norm() <= 1e-14 * d * d || d == 0.0) fail(Errc::zero_area, "quad of F has vanishing area");
  const Vec3 nhat = af.normalized();
  const double area = af.dot(nhat);
  const double mixed = mixed_area(f, n, planarity_tol).dot(nhat);
  const double gauss = quad_area(n, planarity_tol).dot(nhat);
  return {-mixed / area, gauss / area, area, mixed, nhat};
}

inline Net3 offset_net(const Net3& f, const Net3& n, double t) {
  if (!(f.domain() == n.domain())) fail(Errc::domain_mismatch, "offset_net: F and N live on different domains");
  Net3 out(f.domain());
  for (const auto& v : f.domain().vertices()) out[v] = f[v] + t * n[v];
  return out;
}

/// |H| on every quad.
inline CheckReport check_minimal(const Net3& f, const Net3& n, double tol = 1e-9) {
  const auto quads = f.domain().quads();
  std::vector<double> res(quads.size());
  parallel_for(quads.size(), [&](std::size_t i) {
    try {
      res[i] = std::abs(quad_curvatures(f.quad(quads[i]), n.quad(quads[i])).H);
    } catch (const Error&) {
      res[i] = std::numeric_limits<double>::infinity();
    }
  });
  return collect("minimality", tol, quads, res);
}

/// |H - c| on every quad, for nets of constant mean curvature c.
inline CheckReport check_constant_mean_curvature(const Net3& f, const Net3& n, double c, double tol = 1e-9) {
  const auto quads = f.domain().quads();
  std::vector<double> res(quads.size());
  parallel_for(quads.size(), [&](std::size_t i) {
    try {
      res[i] = std::abs(quad_curvatures(f.quad(quads[i]), n.quad(quads[i])).H - c);
    } catch (const Error&) {
      res[i] = std::numeric_limits<double>::infinity();
    }
  });
  return collect("constant mean curvature", tol, quads, res);
}

/// Relative defect |A(F^t) - (1 - 2tH + t^2 K) A(F)| / |A(F)| for one quad.
inline double steiner_defect(const Quad3& f, const Quad3& n, double t) {
  const auto c = quad_curvatures(f, n);
  Quad3 ft;
  for (int i = 0; i < 4; ++i) ft[i] = f[i] + t * n[i];
  const Vec3 lhs = quad_area(ft);
  const Vec3 rhs = (1.0 - 2.0 * t * c.H + t * t * c.K) * quad_area(f);
  return (lhs - rhs).norm() / c.areaF;
}

/// Steiner identity on every quad for each offset in ts.
inline CheckReport check_steiner(const Net3& f, const Net3& n, const std::vector<double>& ts, double tol = 1e-9) {
  const auto quads = f.domain().quads();
  std::vector<double> res(quads.size(), 0.0);
  parallel_for(quads.size(), [&](std::size_t i) {
    try {
      for (double t : ts) res[i] = std::max(res[i], steiner_defect(f.quad(quads[i]), n.quad(quads[i]), t));
    } catch (const Error&) {
      res[i] = std::numeric_limits<double>::infinity();
    }
  });
  return collect("steiner", tol, quads, res);
}

}  // namespace minnet

#pragma once

#include <array>
#include <cmath>
#include <deque>
#include <string>
#include <vector>

#include "minnet/curvature.hpp"
#include "minnet/error.hpp"
#include "minnet/holomorphic.hpp"
#include "minnet/integrate.hpp"
#include "minnet/net_checks.hpp"

namespace minnet {

namespace detail {

/// Re(c * (1 - g_a g_b, i (1 + g_a g_b), g_a + g_b) / (g_b - g_a)), with the
/// limits for one endpoint at infinity.
inline Vec3 weierstrass_edge(const CInf& ga, const CInf& gb, Complex c) {
  const Complex I(0.0, 1.0);
  std::array<Complex, 3> v;
  if (ga.inf && gb.inf) fail(Errc::zero_dg, "edge with both ends at infinity");
  if (ga.inf || gb.inf) {
    // g_a -> ∞: the vector tends to (g_b, -i g_b, -1); g_b -> ∞ flips the sign.
    const Complex w = ga.inf ? gb.z : ga.z;
    const double s = ga.inf ? 1.0 : -1.0;
    v = {s * w, -s * I * w, -s};
  } else {
    const Complex dg = gb.z - ga.z;
    const double scale = std::max({1.0, std::abs(ga.z), std::abs(gb.z)});
    if (std::abs(dg) <= 1e-14 * scale) fail(Errc::zero_dg, "dg vanishes on an edge");
    const Complex p = ga.z * gb.z;
    v = {(1.0 - p) / dg, I * (1.0 + p) / dg, (ga.z + gb.z) / dg};
  }
  return {(c * v[0]).real(), (c * v[1]).real(), (c * v[2]).real()};
}

}  // namespace detail

/// Weierstrass integral of g with the constant factor c (1 for the isothermic
/// net, i for the asymptotic one), together with its loop-closure report.
inline Integrated weierstrass_integrated(const HoloGrid& g, Complex c, double tol = 1e-9) {
  return integrate_edges(
      g.domain(), [&](Vertex a, Vertex b) { return detail::weierstrass_edge(g[a], g[b], g.labels.edge(a, b) * c); },
      tol);
}

/// Discrete isothermic minimal net of the holomorphic data g.
inline Net3 weierstrass_isothermic(const HoloGrid& g, double tol = 1e-9) {
  return weierstrass_integrated(g, 1.0, tol).net;
}

/// Discrete asymptotic minimal net: the same integral with an extra factor i.
inline Net3 weierstrass_asymptotic(const HoloGrid& g, double tol = 1e-9) {
  return weierstrass_integrated(g, Complex(0.0, 1.0), tol).net;
}

/// Vertexwise stereographic lift of g.
inline Net3 gauss_map(const HoloGrid& g) {
  return g.values.map([](const CInf& z) { return stereographic_lift(z); });
}

/// Christoffel dual: dF* = a dF / |dF|^2, integrated from the smallest vertex.
inline Net3 christoffel(const Net3& f, const EdgeLabels& labels, double tol = 1e-9) {
  const auto iso = is_isothermic(f, labels, tol);
  if (!iso.pass)
    fail(Errc::not_isothermic, "cross ratios do not factor through the labels at " + to_string(*iso.worst));
  return integrate_edges(
             f.domain(),
             [&](Vertex a, Vertex b) {
               const Vec3 d = f[b] - f[a];
               return Vec3(labels.edge(a, b) * d / d.squaredNorm());
             },
             tol)
      .net;
}

// ---------------------------------------------------------------------------
// Asymptotic nets
// ---------------------------------------------------------------------------

namespace detail {

/// Points of the (possibly partial) vertex star of v: v and its present neighbours.
inline std::vector<Vec3> star_points(const Net3& f, Vertex v) {
  std::vector<Vec3> pts{f[v]};
  for (const auto& w : f.domain().neighbors(v)) pts.push_back(f[w]);
  return pts;
}

}  // namespace detail

struct AsymptoticReport {
  CheckReport stars{"star coplanarity", 0.0};
  std::size_t degenerate_quads{0};        ///< quads that are planar within tol
  double min_quad_nonplanarity{0.0};      ///< smallest relative quad planarity residual
  std::optional<Vertex> flattest;

  [[nodiscard]] bool pass() const { return stars.pass && degenerate_quads == 0; }
};

/// Star coplanarity at every vertex with at least three neighbours, plus the
/// requirement that no quad is planar.
inline AsymptoticReport is_asymptotic(const Net3& f, double tol = 1e-9) {
  AsymptoticReport out;
  const auto& dom = f.domain();
  std::vector<Vertex> centers;
  for (const auto& v : dom.vertices())
    if (dom.neighbors(v).size() >= 3) centers.push_back(v);
  std::vector<double> res(centers.size());
  parallel_for(centers.size(), [&](std::size_t i) {
    const auto pts = detail::star_points(f, centers[i]);
    res[i] = planarity_residual(pts) / std::max(diameter(pts), 1e-300);
  });
  out.stars = collect("star coplanarity", tol, centers, res);

  out.min_quad_nonplanarity = std::numeric_limits<double>::infinity();
  for (const auto& q : dom.quads()) {
    const auto p = f.quad(q);
    const double r = planarity_residual(p) / std::max(diameter(p), 1e-300);
    if (r <= tol) ++out.degenerate_quads;
    if (r < out.min_quad_nonplanarity) {
      out.min_quad_nonplanarity = r;
      out.flattest = q;
    }
  }
  return out;
}

/// Unit normal of the tangent plane (vertex star plane) at every vertex.
/// Missing neighbours are replaced by the vertex itself.
inline Net3 tangent_normals(const Net3& f) {
  const auto& dom = f.domain();
  Net3 out(dom, Vec3::Zero());
  for (const auto& v : dom.vertices()) {
    auto at = [&](Vertex w) { return dom.contains(w) ? f[w] : f[v]; };
    const Vec3 e1 = at(v + kStepM) - at(v - kStepM);
    const Vec3 e2 = at(v + kStepN) - at(v - kStepN);
    const Vec3 n = e1.cross(e2);
    if (n.norm() <= 1e-300) fail(Errc::degenerate, "tangent plane undefined at " + to_string(v));
    out[v] = n.normalized();
  }
  return out;
}

/// max over vertices of min(|n - m|, |n + m|).
inline CheckReport compare_normals_up_to_sign(const Net3& n, const Net3& m, double tol = 1e-9) {
  if (!(n.domain() == m.domain())) fail(Errc::domain_mismatch, "normal fields on different domains");
  const auto verts = n.domain().vertices();
  std::vector<double> res(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i)
    res[i] = std::min((n[verts[i]] - m[verts[i]]).norm(), (n[verts[i]] + m[verts[i]]).norm());
  return collect("shared normals", tol, verts, res);
}

// ---------------------------------------------------------------------------
// Normal bundles of circular nets
// ---------------------------------------------------------------------------

/// N_j = N_i + t dF_ij with t = -2 (N_i . dF_ij) / |dF_ij|^2: the reflection of
/// N_i in the plane bisecting the edge.
inline Vec3 transport_normal(const Vec3& ni, const Vec3& df) { return ni - 2.0 * ni.dot(df) / df.squaredNorm() * df; }

/// Propagates a unit normal from the smallest vertex over a circular net and
/// verifies that every edge relation holds (path independence).
inline Net3 propagate_normals(const Net3& f, const Vec3& n0, double tol = 1e-9) {
  const auto& dom = f.domain();
  if (std::abs(n0.norm() - 1.0) > 1e-12) fail(Errc::invalid_argument, "root normal must be a unit vector");
  Net3 n(dom, Vec3::Zero());
  const Vertex root = dom.vertices().front();
  n[root] = n0;
  std::vector<char> seen(dom.slot_count(), 0);
  seen[dom.slot(root)] = 1;
  std::deque<Vertex> queue{root};
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (const auto& w : dom.neighbors(v)) {
      if (seen[dom.slot(w)]) continue;
      seen[dom.slot(w)] = 1;
      n[w] = transport_normal(n[v], f[w] - f[v]);
      queue.push_back(w);
    }
  }
  for (const auto& [a, b] : dom.edges()) {
    if ((transport_normal(n[a], f[b] - f[a]) - n[b]).norm() > tol)
      fail(Errc::inconsistent_bundle, "normal bundle does not close around " + to_string(a));
  }
  return n;
}

// ---------------------------------------------------------------------------
// Minimal pairs
// ---------------------------------------------------------------------------

/// Isothermic minimal net, its conjugate asymptotic net, the shared Gauss map,
/// and the holomorphic data they come from.
struct MinimalPair {
  Net3 F;
  Net3 F_tilde;
  Net3 N;
  HoloGrid g;
  CheckReport closure_F;
  CheckReport closure_F_tilde;
};

inline MinimalPair make_minimal_pair(const HoloGrid& g, double tol = 1e-9) {
  auto iso = weierstrass_integrated(g, 1.0, tol);
  auto asym = weierstrass_integrated(g, Complex(0.0, 1.0), tol);
  iso.closure.name = "closure F";
  asym.closure.name = "closure F_tilde";
  return {std::move(iso.net), std::move(asym.net), gauss_map(g), g, std::move(iso.closure), std::move(asym.closure)};
}

}  // namespace minnet

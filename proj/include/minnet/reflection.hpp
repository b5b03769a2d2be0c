#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "minnet/error.hpp"
#include "minnet/geometry.hpp"
#include "minnet/holomorphic.hpp"
#include "minnet/minimal.hpp"

namespace minnet {

/// A boundary row (fixed n) or column (fixed m) of a lattice domain.
struct Boundary {
  enum class Side { row, column };
  Side side{Side::row};
  int index{0};

  static Boundary row(int n) { return {Side::row, n}; }
  static Boundary column(int m) { return {Side::column, m}; }

  [[nodiscard]] Boundary transposed() const { return {side == Side::row ? Side::column : Side::row, index}; }
  friend bool operator==(const Boundary&, const Boundary&) = default;
};

inline std::string to_string(const Boundary& b) {
  return std::string(b.side == Boundary::Side::row ? "row n=" : "column m=") + std::to_string(b.index);
}

/// All boundary rows and columns of the bounding rectangle of a domain.
inline std::vector<Boundary> boundaries_of(const LatticeDomain& d) {
  return {Boundary::row(d.n_min()), Boundary::row(d.n_max()), Boundary::column(d.m_min()),
          Boundary::column(d.m_max())};
}

/// Present vertices of a row or column, ordered along it.
inline std::vector<Vertex> boundary_vertices(const LatticeDomain& d, const Boundary& b) {
  std::vector<Vertex> out;
  if (b.side == Boundary::Side::row) {
    for (int m = d.m_min(); m <= d.m_max(); ++m)
      if (d.contains({m, b.index})) out.push_back({m, b.index});
  } else {
    for (int n = d.n_min(); n <= d.n_max(); ++n)
      if (d.contains({b.index, n})) out.push_back({b.index, n});
  }
  return out;
}

struct BoundaryAnalysis {
  enum class Kind { none, planar_curvature_line, straight_asymptotic_line };
  enum class GaussCircle { none, great_circle, small_circle };

  Boundary boundary;
  Kind kind{Kind::none};
  GaussCircle gauss{GaussCircle::none};
  std::optional<PlaneR3> plane;        ///< symmetry plane of a planar curvature line
  std::optional<LineR3> line;          ///< axis of a straight asymptotic line
  std::optional<PlaneR3> gauss_plane;  ///< plane through the origin containing the Gauss image
  double fit_residual{0.0};    ///< plane fit of F and F+N (or line fit of the row), relative
  double curve_planarity{0.0}; ///< planarity of the row of F alone, relative
  double great_residual{0.0};  ///< Gauss image against the best plane through the origin
  double small_residual{0.0};  ///< Gauss image against the best plane (any circle)
  double axis_residual{0.0};   ///< asymptotic case: max |N . line direction|
  bool consistent{true};       ///< kind and gauss agree as the boundary lemmas require
};

inline std::string to_string(BoundaryAnalysis::Kind k) {
  switch (k) {
    case BoundaryAnalysis::Kind::planar_curvature_line: return "planar_curvature_line";
    case BoundaryAnalysis::Kind::straight_asymptotic_line: return "straight_asymptotic_line";
    default: return "none";
  }
}

inline std::string to_string(BoundaryAnalysis::GaussCircle k) {
  switch (k) {
    case BoundaryAnalysis::GaussCircle::great_circle: return "great_circle";
    case BoundaryAnalysis::GaussCircle::small_circle: return "small_circle";
    default: return "none";
  }
}

namespace detail {

inline std::vector<Vec3> gather(const Net3& f, const std::vector<Vertex>& vs) {
  std::vector<Vec3> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(f[v]);
  return out;
}

inline void classify_gauss(BoundaryAnalysis& a, const std::vector<Vec3>& normals, double tol) {
  try {
    const auto great = fit_plane_through_origin(normals);
    a.great_residual = great.max_residual;
    a.gauss_plane = great.plane;
  } catch (const Error&) {
    a.great_residual = std::numeric_limits<double>::infinity();
  }
  try {
    a.small_residual = fit_plane(normals).max_residual;
  } catch (const Error&) {
    // Two normals, or all equal: they lie on circles of every radius.
    a.small_residual = 0.0;
  }
  if (a.great_residual <= tol)
    a.gauss = BoundaryAnalysis::GaussCircle::great_circle;
  else if (a.small_residual <= tol)
    a.gauss = BoundaryAnalysis::GaussCircle::small_circle;
}

}  // namespace detail

/// Decides whether a boundary line of a circular net with Gauss map N is a
/// planar curvature line whose normal congruence lies in the plane, and
/// classifies the Gauss image of the line.
inline BoundaryAnalysis analyze_boundary_isothermic(const Net3& f, const Net3& n, const Boundary& b,
                                                    double tol = 1e-9) {
  if (!(f.domain() == n.domain())) fail(Errc::domain_mismatch, "F and N live on different domains");
  BoundaryAnalysis a;
  a.boundary = b;
  const auto vs = boundary_vertices(f.domain(), b);
  if (vs.size() < 2) return a;
  const auto pf = detail::gather(f, vs);
  const auto pn = detail::gather(n, vs);
  const double scale = std::max(1.0, diameter(pf));

  std::vector<Vec3> congruence = pf;
  for (std::size_t i = 0; i < vs.size(); ++i) congruence.push_back(pf[i] + pn[i]);
  a.curve_planarity = planarity_residual(pf) / scale;
  detail::classify_gauss(a, pn, tol);
  try {
    const auto fit = fit_plane(congruence);
    a.fit_residual = fit.max_residual / scale;
    if (a.fit_residual <= tol) {
      a.kind = BoundaryAnalysis::Kind::planar_curvature_line;
      a.plane = fit.plane;
    }
  } catch (const Error&) {
    a.fit_residual = std::numeric_limits<double>::infinity();
  }
  const bool in_plane = a.kind == BoundaryAnalysis::Kind::planar_curvature_line;
  const bool great = a.gauss == BoundaryAnalysis::GaussCircle::great_circle;
  const bool planar_curve = a.curve_planarity <= tol;
  const bool concircular = a.gauss != BoundaryAnalysis::GaussCircle::none;
  a.consistent = in_plane == great && planar_curve == concircular;
  return a;
}

/// Decides whether a boundary line of an asymptotic net is straight and checks
/// that the tangent-plane normals along it lie on the great circle orthogonal
/// to the line.
inline BoundaryAnalysis analyze_boundary_asymptotic(const Net3& ft, const Boundary& b, double tol = 1e-9) {
  BoundaryAnalysis a;
  a.boundary = b;
  const auto vs = boundary_vertices(ft.domain(), b);
  if (vs.size() < 2) return a;
  const auto pf = detail::gather(ft, vs);
  const double scale = std::max(1.0, diameter(pf));
  const Net3 normals = tangent_normals(ft);
  const auto pn = detail::gather(normals, vs);
  detail::classify_gauss(a, pn, tol);
  a.curve_planarity = planarity_residual(pf) / scale;
  const auto fit = fit_line(pf);
  a.fit_residual = fit.max_residual / scale;
  if (a.fit_residual <= tol) {
    a.kind = BoundaryAnalysis::Kind::straight_asymptotic_line;
    a.line = fit.line;
    for (const auto& v : pn) a.axis_residual = std::max(a.axis_residual, std::abs(v.dot(fit.line.direction)));
  }
  const bool straight = a.kind == BoundaryAnalysis::Kind::straight_asymptotic_line;
  a.consistent = straight == (a.gauss == BoundaryAnalysis::GaussCircle::great_circle) &&
                 (!straight || a.axis_residual <= tol);
  return a;
}

// ---------------------------------------------------------------------------
// Extensions
// ---------------------------------------------------------------------------

namespace detail {

/// Domain of the row extension across the top (n = n_max) or bottom (n = n_min) row.
inline LatticeDomain mirrored_domain(const LatticeDomain& d, int n0) {
  const bool up = n0 == d.n_max();
  const int n_lo = up ? d.n_min() : 2 * n0 - d.n_max();
  const int n_hi = up ? 2 * n0 - d.n_min() : d.n_max();
  auto mask = d.mask();
  for (const auto& v : d.mask())
    if (v.n != n0) mask.push_back({v.m, 2 * n0 - v.n});
  return {d.m_min(), d.m_max(), n_lo, n_hi, mask};
}

template <typename T, typename Map>
LatticeField<T> mirror_rows(const LatticeField<T>& f, int n0, Map&& map) {
  LatticeField<T> out(mirrored_domain(f.domain(), n0));
  for (const auto& v : f.domain().vertices()) {
    out[v] = f[v];
    if (v.n != n0) out[{v.m, 2 * n0 - v.n}] = map(f[v]);
  }
  return out;
}

inline EdgeLabels mirror_labels(const EdgeLabels& l, const LatticeDomain& d, int n0) {
  const auto ext = mirrored_domain(d, n0);
  std::vector<double> beta;
  for (int n = ext.n_min(); n < ext.n_max(); ++n) {
    // Edge (n, n+1) mirrors edge (2 n0 - n - 1, 2 n0 - n).
    const int src = (n >= d.n_min() && n < d.n_max()) ? n : 2 * n0 - n - 1;
    beta.push_back(l.beta(src));
  }
  return {l.m_offset(), l.alphas(), ext.n_min(), beta};
}

inline void require_edge_row(const LatticeDomain& d, const Boundary& b) {
  const int lo = b.side == Boundary::Side::row ? d.n_min() : d.m_min();
  const int hi = b.side == Boundary::Side::row ? d.n_max() : d.m_max();
  if (b.index != lo && b.index != hi)
    fail(Errc::not_reflectable, to_string(b) + " is not a boundary of the domain");
  if (lo == hi) fail(Errc::not_reflectable, "domain is a single line");
}

}  // namespace detail

/// Result of a Schwarz extension across one boundary line.
struct Extension {
  Net3 F;
  std::optional<Net3> N;
  std::optional<EdgeLabels> labels;
  Isometry symmetry;
  Boundary seam;
  double bundle_residual{0.0};  ///< mirrored N against N re-propagated over the extension
};

namespace detail {

inline Extension transpose_extension(Extension e) {
  e.F = e.F.transposed();
  if (e.N) e.N = e.N->transposed();
  if (e.labels) e.labels = e.labels->transposed();
  e.seam = e.seam.transposed();
  return e;
}

}  // namespace detail

/// Extends a circular net with Gauss map N by reflection in the plane of a
/// planar boundary curvature line. N is extended by the linear part of the
/// reflection and cross-checked against the normal bundle propagated over the
/// whole extended net.
inline Extension reflect_isothermic(const Net3& f, const Net3& n, const Boundary& b, double tol = 1e-9,
                                    const std::optional<EdgeLabels>& labels = std::nullopt) {
  if (b.side == Boundary::Side::column) {
    auto e = reflect_isothermic(f.transposed(), n.transposed(), b.transposed(), tol,
                                labels ? std::optional<EdgeLabels>(labels->transposed()) : std::nullopt);
    return detail::transpose_extension(std::move(e));
  }
  detail::require_edge_row(f.domain(), b);
  const auto a = analyze_boundary_isothermic(f, n, b, tol);
  if (a.kind != BoundaryAnalysis::Kind::planar_curvature_line)
    fail(Errc::not_reflectable, to_string(b) + " is not a planar curvature line with in-plane normals");
  Extension e;
  e.seam = b;
  e.symmetry = Isometry::reflection(*a.plane);
  e.F = detail::mirror_rows(f, b.index, [&](const Vec3& p) { return e.symmetry.apply(p); });
  e.N = detail::mirror_rows(n, b.index, [&](const Vec3& v) { return e.symmetry.apply_linear(v); });
  if (labels) e.labels = detail::mirror_labels(*labels, f.domain(), b.index);

  const Vertex root = e.F.domain().vertices().front();
  const Net3 propagated = propagate_normals(e.F, (*e.N)[root], std::max(tol, 1e-9));
  for (const auto& v : e.F.domain().vertices())
    e.bundle_residual = std::max(e.bundle_residual, (propagated[v] - (*e.N)[v]).norm());
  if (e.bundle_residual > tol)
    fail(Errc::inconsistent_bundle, "mirrored Gauss map disagrees with the propagated normal bundle");
  return e;
}

/// Extends an asymptotic net by the 180 degree rotation about a straight
/// boundary asymptotic line. Optional normals are rotated along.
inline Extension rotate_extend_asymptotic(const Net3& ft, const Boundary& b, double tol = 1e-9,
                                          const std::optional<Net3>& normals = std::nullopt) {
  if (b.side == Boundary::Side::column) {
    auto e = rotate_extend_asymptotic(ft.transposed(), b.transposed(), tol,
                                      normals ? std::optional<Net3>(normals->transposed()) : std::nullopt);
    return detail::transpose_extension(std::move(e));
  }
  detail::require_edge_row(ft.domain(), b);
  const auto a = analyze_boundary_asymptotic(ft, b, tol);
  if (a.kind != BoundaryAnalysis::Kind::straight_asymptotic_line)
    fail(Errc::not_reflectable, to_string(b) + " is not a straight asymptotic line");
  Extension e;
  e.seam = b;
  e.symmetry = Isometry::rotation_180(*a.line);
  e.F = detail::mirror_rows(ft, b.index, [&](const Vec3& p) { return e.symmetry.apply(p); });
  if (normals) e.N = detail::mirror_rows(*normals, b.index, [&](const Vec3& v) { return e.symmetry.apply_linear(v); });
  return e;
}

/// Extends holomorphic data across a boundary line whose image lies on the
/// great circle orthogonal to `axis`, by the matching anti-Möbius reflection.
inline HoloGrid reflect_holomorphic(const HoloGrid& g, const Boundary& b, const Vec3& axis) {
  if (b.side == Boundary::Side::column) {
    HoloGrid t{g.values.transposed(), g.labels.transposed()};
    auto r = reflect_holomorphic(t, b.transposed(), axis);
    return {r.values.transposed(), r.labels.transposed()};
  }
  detail::require_edge_row(g.domain(), b);
  return {detail::mirror_rows(g.values, b.index, [&](const CInf& z) { return reflect_in_great_circle(z, axis); }),
          detail::mirror_labels(g.labels, g.domain(), b.index)};
}

// ---------------------------------------------------------------------------
// Corner angles
// ---------------------------------------------------------------------------

struct CornerAngles {
  double angleP{0.0};  ///< between the symmetry planes, on the side of the corner quad of F
  double angleQ{0.0};  ///< between the Gauss planes, on the side of the corner quad of N
  PlaneR3 P1, P2;
};

/// Angles at the corner where a boundary row and a boundary column meet. The
/// corner vertex itself may be absent from the domain.
inline CornerAngles corner_angles(const Net3& f, const Net3& n, Vertex corner, double tol = 1e-9) {
  const auto& d = f.domain();
  const Boundary row = Boundary::row(corner.n), col = Boundary::column(corner.m);
  if ((corner.n != d.n_min() && corner.n != d.n_max()) || (corner.m != d.m_min() && corner.m != d.m_max()))
    fail(Errc::not_planar_boundary, "vertex " + to_string(corner) + " is not a corner of the domain");
  const auto a1 = analyze_boundary_isothermic(f, n, row, tol);
  const auto a2 = analyze_boundary_isothermic(f, n, col, tol);
  for (const auto* a : {&a1, &a2}) {
    if (a->kind != BoundaryAnalysis::Kind::planar_curvature_line || !a->gauss_plane)
      fail(Errc::not_planar_boundary, to_string(a->boundary) + " is not a planar boundary with in-plane normals");
  }
  const Vertex q{corner.m == d.m_min() ? corner.m : corner.m - 1, corner.n == d.n_min() ? corner.n : corner.n - 1};
  Vec3 cf = Vec3::Zero(), cn = Vec3::Zero();
  int count = 0;
  for (const auto& v : quad_vertices(q)) {
    if (!d.contains(v)) continue;
    cf += f[v];
    cn += n[v];
    ++count;
  }
  if (count < 3) fail(Errc::not_planar_boundary, "no quad at corner " + to_string(corner));
  cf /= count;
  cn /= count;

  auto wedge = [](PlaneR3 p1, PlaneR3 p2, const Vec3& inside) {
    if (p1.signed_distance(inside) < 0.0) p1 = {-p1.normal, -p1.offset};
    if (p2.signed_distance(inside) < 0.0) p2 = {-p2.normal, -p2.offset};
    return std::pair{std::numbers::pi - std::acos(std::clamp(p1.normal.dot(p2.normal), -1.0, 1.0)), std::pair{p1, p2}};
  };
  const auto [angle_p, planes] = wedge(*a1.plane, *a2.plane, cf);
  const auto [angle_q, unused] = wedge(*a1.gauss_plane, *a2.gauss_plane, cn);
  (void)unused;
  return {angle_p, angle_q, planes.first, planes.second};
}

}  // namespace minnet

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "minnet/error.hpp"
#include "minnet/geometry.hpp"
#include "minnet/lattice.hpp"

namespace minnet {

struct OrbitOptions {
  int max_word{64};
  std::size_t cap{10000};
  double group_tol{1e-9};  ///< isometry dedup threshold (translations relative to the piece scale)
  double weld_tol{1e-9};   ///< seam weld threshold relative to the piece scale
};

/// Copies of a fundamental piece under a finite group generated by isometries,
/// welded into a single quad mesh.
struct SymmetryOrbit {
  Net3 piece;
  std::vector<Isometry> generators;
  std::vector<Isometry> elements;      ///< identity first, then breadth-first by word length
  std::vector<Vec3> vertices;          ///< welded vertices
  std::vector<std::array<std::size_t, 4>> faces;
  std::vector<std::vector<std::size_t>> copy_index;  ///< [element][slot] -> welded vertex
  double scale{1.0};
  double weld_residual{0.0};  ///< largest distance between merged points, relative to scale

  [[nodiscard]] std::size_t raw_vertex_count() const { return elements.size() * piece.domain().vertex_count(); }
};

/// Uniform-grid point locator for welding.
class PointLocator {
 public:
  explicit PointLocator(double cell) : cell_(cell) {}

  /// Index of a stored point within tol of p, or -1.
  [[nodiscard]] std::int64_t find(const Vec3& p, double tol, const std::vector<Vec3>& pts) const {
    const auto c = key(p);
    std::int64_t best = -1;
    double best_d = tol;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dz = -1; dz <= 1; ++dz) {
          const auto it = cells_.find(hash({c[0] + dx, c[1] + dy, c[2] + dz}));
          if (it == cells_.end()) continue;
          for (const auto idx : it->second) {
            const double d = (pts[idx] - p).norm();
            if (d <= best_d) {
              best_d = d;
              best = static_cast<std::int64_t>(idx);
            }
          }
        }
    return best;
  }

  void insert(const Vec3& p, std::size_t idx) { cells_[hash(key(p))].push_back(idx); }

 private:
  using Key = std::array<std::int64_t, 3>;
  [[nodiscard]] Key key(const Vec3& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x() / cell_)), static_cast<std::int64_t>(std::floor(p.y() / cell_)),
            static_cast<std::int64_t>(std::floor(p.z() / cell_))};
  }
  static std::uint64_t hash(const Key& k) {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
    return h;
  }

  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

/// Breadth-first closure of the group generated by `gens`. Throws
/// OrbitExplosion if more than `cap` elements appear or if new elements are
/// still being found after `max_word` letters.
inline std::vector<Isometry> close_group(const std::vector<Isometry>& gens, double scale, const OrbitOptions& opt = {}) {
  std::vector<Isometry> elements{Isometry::identity()};
  std::vector<std::size_t> frontier{0};
  auto known = [&](const Isometry& g) {
    for (const auto& e : elements)
      if (e.distance(g, scale) <= opt.group_tol) return true;
    return false;
  };
  for (int word = 1; word <= opt.max_word && !frontier.empty(); ++word) {
    std::vector<std::size_t> next;
    for (const auto idx : frontier) {
      for (const auto& gen : gens) {
        const Isometry cand = gen.compose(elements[idx]);
        if (known(cand)) continue;
        elements.push_back(cand);
        next.push_back(elements.size() - 1);
        if (elements.size() > opt.cap)
          fail(Errc::orbit_explosion, "group exceeds " + std::to_string(opt.cap) + " elements");
      }
    }
    frontier = std::move(next);
  }
  if (!frontier.empty())
    fail(Errc::orbit_explosion,
         "group not closed after words of length " + std::to_string(opt.max_word) + " (" +
             std::to_string(elements.size()) + " elements so far)");
  return elements;
}

/// Builds the orbit of `piece` under the group generated by `generators`.
inline SymmetryOrbit build_orbit(const Net3& piece, const std::vector<Isometry>& generators,
                                 const OrbitOptions& opt = {}) {
  SymmetryOrbit o;
  o.piece = piece;
  o.generators = generators;
  o.scale = net_scale(piece);
  o.elements = close_group(generators, o.scale, opt);

  const double tol = opt.weld_tol * o.scale;
  PointLocator loc(std::max(tol, 1e-300) * 4.0);
  const auto& dom = piece.domain();
  const auto verts = dom.vertices();
  o.copy_index.assign(o.elements.size(), std::vector<std::size_t>(dom.slot_count(), 0));
  double worst = 0.0;
  for (std::size_t e = 0; e < o.elements.size(); ++e) {
    for (const auto& v : verts) {
      const Vec3 p = o.elements[e].apply(piece[v]);
      const auto hit = loc.find(p, tol, o.vertices);
      if (hit >= 0) {
        worst = std::max(worst, (o.vertices[static_cast<std::size_t>(hit)] - p).norm());
        o.copy_index[e][dom.slot(v)] = static_cast<std::size_t>(hit);
      } else {
        o.vertices.push_back(p);
        loc.insert(p, o.vertices.size() - 1);
        o.copy_index[e][dom.slot(v)] = o.vertices.size() - 1;
      }
    }
    const bool flip = o.elements[e].determinant() < 0.0;
    for (const auto& q : dom.quads()) {
      const auto c = quad_vertices(q);
      std::array<std::size_t, 4> f{};
      for (int i = 0; i < 4; ++i) f[i] = o.copy_index[e][dom.slot(c[i])];
      if (flip) std::swap(f[1], f[3]);
      o.faces.push_back(f);
    }
  }
  o.weld_residual = worst / o.scale;
  return o;
}

/// Worst relative distance from iso(v) to the nearest welded vertex, and
/// whether the induced vertex map is a bijection within tol.
struct InvarianceResult {
  bool bijective{true};
  double max_residual{0.0};
};

inline InvarianceResult check_invariance(const SymmetryOrbit& o, const Isometry& iso, double tol) {
  InvarianceResult r;
  const double abs_tol = tol * o.scale;
  PointLocator loc(std::max(abs_tol, 1e-300) * 4.0);
  for (std::size_t i = 0; i < o.vertices.size(); ++i) loc.insert(o.vertices[i], i);
  std::vector<char> hit(o.vertices.size(), 0);
  for (const auto& p : o.vertices) {
    const Vec3 q = iso.apply(p);
    const auto idx = loc.find(q, abs_tol, o.vertices);
    if (idx < 0) {
      r.bijective = false;
      r.max_residual = std::numeric_limits<double>::infinity();
      continue;
    }
    r.max_residual = std::max(r.max_residual, (o.vertices[static_cast<std::size_t>(idx)] - q).norm() / o.scale);
    if (hit[static_cast<std::size_t>(idx)]) r.bijective = false;
    hit[static_cast<std::size_t>(idx)] = 1;
  }
  return r;
}

}  // namespace minnet

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "minnet/error.hpp"
#include "minnet/geometry.hpp"

namespace minnet {

/// A vertex (m, n) of Z^2.
struct Vertex {
  int m{0};
  int n{0};

  friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
  friend constexpr Vertex operator+(Vertex a, Vertex b) { return {a.m + b.m, a.n + b.n}; }
  friend constexpr Vertex operator-(Vertex a, Vertex b) { return {a.m - b.m, a.n - b.n}; }
};

inline std::string to_string(Vertex v) { return "(" + std::to_string(v.m) + "," + std::to_string(v.n) + ")"; }

inline constexpr Vertex kStepM{1, 0};
inline constexpr Vertex kStepN{0, 1};

/// Corners (i, j, k, l) of the elementary quad with lower-left corner v.
constexpr std::array<Vertex, 4> quad_vertices(Vertex v) {
  return {v, v + kStepM, v + kStepM + kStepN, v + kStepN};
}

// ---------------------------------------------------------------------------
// LatticeDomain
// ---------------------------------------------------------------------------

/// Rectangle [m0, m1] x [n0, n1] of Z^2 minus a set of masked vertices.
/// Quads touching a masked vertex are not part of the domain.
class LatticeDomain {
 public:
  LatticeDomain() : LatticeDomain(0, 0, 0, 0) {}

  LatticeDomain(int m0, int m1, int n0, int n1, std::vector<Vertex> mask = {})
      : m0_(m0), m1_(m1), n0_(n0), n1_(n1) {
    if (m1 < m0 || n1 < n0) fail(Errc::invalid_argument, "empty lattice range");
    present_.assign(slot_count(), 1);
    std::sort(mask.begin(), mask.end());
    mask.erase(std::unique(mask.begin(), mask.end()), mask.end());
    for (const auto& v : mask) {
      if (!in_range(v)) fail(Errc::invalid_argument, "mask vertex " + to_string(v) + " outside the lattice range");
      present_[slot(v)] = 0;
    }
    mask_ = std::move(mask);
    check_connected();
  }

  /// Vertices {0..M-1} x {0..N-1}.
  static LatticeDomain rectangle(int M, int N, std::vector<Vertex> mask = {}) {
    return {0, M - 1, 0, N - 1, std::move(mask)};
  }

  [[nodiscard]] int m_min() const noexcept { return m0_; }
  [[nodiscard]] int m_max() const noexcept { return m1_; }
  [[nodiscard]] int n_min() const noexcept { return n0_; }
  [[nodiscard]] int n_max() const noexcept { return n1_; }
  [[nodiscard]] const std::vector<Vertex>& mask() const noexcept { return mask_; }

  [[nodiscard]] bool in_range(Vertex v) const noexcept { return v.m >= m0_ && v.m <= m1_ && v.n >= n0_ && v.n <= n1_; }
  [[nodiscard]] bool contains(Vertex v) const noexcept { return in_range(v) && present_[slot(v)] != 0; }

  [[nodiscard]] bool has_edge(Vertex a, Vertex b) const noexcept {
    const Vertex d = b - a;
    return std::abs(d.m) + std::abs(d.n) == 1 && contains(a) && contains(b);
  }

  [[nodiscard]] bool has_quad(Vertex corner) const noexcept {
    return std::ranges::all_of(quad_vertices(corner), [&](Vertex v) { return contains(v); });
  }

  /// Dense slot of an in-range vertex, m-major.
  [[nodiscard]] std::size_t slot(Vertex v) const noexcept {
    return static_cast<std::size_t>(v.m - m0_) * static_cast<std::size_t>(n1_ - n0_ + 1) +
           static_cast<std::size_t>(v.n - n0_);
  }
  [[nodiscard]] std::size_t slot_count() const noexcept {
    return static_cast<std::size_t>(m1_ - m0_ + 1) * static_cast<std::size_t>(n1_ - n0_ + 1);
  }

  /// Present vertices in m-major, then n order.
  [[nodiscard]] std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    out.reserve(slot_count());
    for (int m = m0_; m <= m1_; ++m)
      for (int n = n0_; n <= n1_; ++n)
        if (contains({m, n})) out.push_back({m, n});
    return out;
  }

  /// Lower-left corners of all quads in the domain, same order as vertices().
  [[nodiscard]] std::vector<Vertex> quads() const {
    std::vector<Vertex> out;
    for (int m = m0_; m < m1_; ++m)
      for (int n = n0_; n < n1_; ++n)
        if (has_quad({m, n})) out.push_back({m, n});
    return out;
  }

  /// Edges (a, a + step) with step in {kStepM, kStepN}.
  [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const auto& v : vertices()) {
      if (contains(v + kStepM)) out.emplace_back(v, v + kStepM);
      if (contains(v + kStepN)) out.emplace_back(v, v + kStepN);
    }
    return out;
  }

  /// Present neighbours in the fixed order +m, -m, +n, -n.
  [[nodiscard]] std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (const Vertex d : {kStepM, Vertex{-1, 0}, kStepN, Vertex{0, -1}})
      if (contains(v + d)) out.push_back(v + d);
    return out;
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept {
    return static_cast<std::size_t>(std::count(present_.begin(), present_.end(), 1));
  }

  /// Swaps the roles of m and n.
  [[nodiscard]] LatticeDomain transposed() const {
    std::vector<Vertex> mask;
    for (const auto& v : mask_) mask.push_back({v.n, v.m});
    return {n0_, n1_, m0_, m1_, std::move(mask)};
  }

  friend bool operator==(const LatticeDomain& a, const LatticeDomain& b) {
    return a.m0_ == b.m0_ && a.m1_ == b.m1_ && a.n0_ == b.n0_ && a.n1_ == b.n1_ && a.mask_ == b.mask_;
  }

 private:
  void check_connected() const {
    const auto verts = vertices();
    if (verts.empty()) fail(Errc::invalid_argument, "domain has no vertices");
    std::vector<char> seen(slot_count(), 0);
    std::deque<Vertex> queue{verts.front()};
    seen[slot(verts.front())] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      for (const auto& w : neighbors(v)) {
        if (!seen[slot(w)]) {
          seen[slot(w)] = 1;
          ++reached;
          queue.push_back(w);
        }
      }
    }
    if (reached != verts.size()) fail(Errc::invalid_argument, "domain is not edge-connected");
  }

  int m0_, m1_, n0_, n1_;
  std::vector<Vertex> mask_;
  std::vector<char> present_;
};

// ---------------------------------------------------------------------------
// Fields on a domain
// ---------------------------------------------------------------------------

/// Per-vertex values on a LatticeDomain, stored densely by slot.
template <typename T>
class LatticeField {
 public:
  using value_type = T;

  LatticeField() = default;
  explicit LatticeField(LatticeDomain domain, const T& fill = T{})
      : domain_(std::move(domain)), values_(domain_.slot_count(), fill) {}

  [[nodiscard]] const LatticeDomain& domain() const noexcept { return domain_; }

  [[nodiscard]] T& operator[](Vertex v) { return values_[checked(v)]; }
  [[nodiscard]] const T& operator[](Vertex v) const { return values_[checked(v)]; }

  [[nodiscard]] std::array<T, 4> quad(Vertex corner) const {
    const auto q = quad_vertices(corner);
    return {(*this)[q[0]], (*this)[q[1]], (*this)[q[2]], (*this)[q[3]]};
  }

  /// Values of present vertices in domain().vertices() order.
  [[nodiscard]] std::vector<T> present_values() const {
    std::vector<T> out;
    for (const auto& v : domain_.vertices()) out.push_back(values_[domain_.slot(v)]);
    return out;
  }

  [[nodiscard]] LatticeField transposed() const {
    LatticeField out(domain_.transposed());
    for (const auto& v : domain_.vertices()) out[{v.n, v.m}] = (*this)[v];
    return out;
  }

  template <typename F>
  [[nodiscard]] auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    LatticeField<U> out(domain_);
    for (const auto& v : domain_.vertices()) out[v] = f((*this)[v]);
    return out;
  }

 private:
  std::size_t checked(Vertex v) const {
    if (!domain_.contains(v)) fail(Errc::invalid_argument, "vertex " + to_string(v) + " not in domain");
    return domain_.slot(v);
  }

  LatticeDomain domain_;
  std::vector<T> values_;
};

/// Discrete net Z^2 ⊃ D -> R^3.
using Net3 = LatticeField<Vec3>;

/// Representative length of a net: bounding-box diagonal (at least 1e-300).
inline double net_scale(const Net3& f) {
  const auto pts = f.present_values();
  return std::max(bounding_diagonal(pts), 1e-300);
}

/// Throws unless every position is finite and every edge has length > 1e-12.
inline void validate_net(const Net3& f) {
  for (const auto& v : f.domain().vertices())
    if (!f[v].allFinite()) fail(Errc::invalid_argument, "non-finite position at " + to_string(v));
  for (const auto& [a, b] : f.domain().edges())
    if ((f[b] - f[a]).norm() <= 1e-12) fail(Errc::degenerate, "zero-length edge at " + to_string(a));
}

// ---------------------------------------------------------------------------
// EdgeLabels
// ---------------------------------------------------------------------------

/// Cross-ratio factorizing functions. Labels live on whole columns/rows of
/// edges: alpha(m) labels every edge (m,n)-(m+1,n), beta(n) every edge
/// (m,n)-(m,n+1). Opposite edges of a quad therefore always agree.
class EdgeLabels {
 public:
  EdgeLabels() = default;
  EdgeLabels(int m0, std::vector<double> alpha, int n0, std::vector<double> beta)
      : m0_(m0), n0_(n0), alpha_(std::move(alpha)), beta_(std::move(beta)) {}

  static EdgeLabels constant(const LatticeDomain& d, double alpha, double beta) {
    return {d.m_min(), std::vector<double>(static_cast<std::size_t>(d.m_max() - d.m_min()), alpha), d.n_min(),
            std::vector<double>(static_cast<std::size_t>(d.n_max() - d.n_min()), beta)};
  }

  [[nodiscard]] double alpha(int m) const { return alpha_.at(static_cast<std::size_t>(m - m0_)); }
  [[nodiscard]] double beta(int n) const { return beta_.at(static_cast<std::size_t>(n - n0_)); }

  /// a_ij / a_il on the quad with lower-left corner v.
  [[nodiscard]] double ratio(Vertex v) const { return alpha(v.m) / beta(v.n); }

  /// Label of the edge a -> b (either orientation).
  [[nodiscard]] double edge(Vertex a, Vertex b) const {
    const Vertex lo = std::min(a, b);
    return a.m != b.m ? alpha(lo.m) : beta(lo.n);
  }

  [[nodiscard]] int m_offset() const noexcept { return m0_; }
  [[nodiscard]] int n_offset() const noexcept { return n0_; }
  [[nodiscard]] const std::vector<double>& alphas() const noexcept { return alpha_; }
  [[nodiscard]] const std::vector<double>& betas() const noexcept { return beta_; }

  /// Labels cover every edge of the domain and every quad ratio is negative.
  [[nodiscard]] bool compatible_with(const LatticeDomain& d) const {
    if (m0_ > d.m_min() || n0_ > d.n_min()) return false;
    if (m0_ + static_cast<int>(alpha_.size()) < d.m_max() || n0_ + static_cast<int>(beta_.size()) < d.n_max())
      return false;
    return std::ranges::all_of(d.quads(), [&](Vertex q) { return ratio(q) < 0.0; });
  }

  [[nodiscard]] EdgeLabels transposed() const { return {n0_, beta_, m0_, alpha_}; }

  friend bool operator==(const EdgeLabels&, const EdgeLabels&) = default;

 private:
  int m0_{0};
  int n0_{0};
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

}  // namespace minnet

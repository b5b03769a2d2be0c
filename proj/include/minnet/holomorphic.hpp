#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "minnet/error.hpp"
#include "minnet/lattice.hpp"
#include "minnet/mobius.hpp"
#include "minnet/net_io.hpp"
#include "minnet/parallel.hpp"
#include "minnet/report.hpp"

namespace minnet {

using HoloField = LatticeField<CInf>;

/// A discrete holomorphic function: values in C∞ on a lattice domain whose
/// quad cross ratios factor through the edge labels.
struct HoloGrid {
  HoloField values;
  EdgeLabels labels;

  [[nodiscard]] const LatticeDomain& domain() const noexcept { return values.domain(); }
  [[nodiscard]] const CInf& operator[](Vertex v) const { return values[v]; }
  CInf& operator[](Vertex v) { return values[v]; }
};

/// Residual of one quad: |cr(g_i, g_j, g_k, g_l) - alpha/beta|, relative to
/// max(1, |alpha/beta|). Degenerate quads give +inf.
inline double holomorphic_residual(const HoloGrid& g, Vertex q) {
  const auto v = g.values.quad(q);
  const double target = g.labels.ratio(q);
  try {
    const CInf cr = cross_ratio_complex(v[0], v[1], v[2], v[3]);
    if (cr.inf) return std::numeric_limits<double>::infinity();
    return std::abs(cr.z - target) / std::max(1.0, std::abs(target));
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

inline CheckReport validate_holomorphic(const HoloGrid& g, double tol = 1e-9) {
  if (!g.labels.compatible_with(g.domain())) {
    // Labels that do not cover the grid fail every quad.
    CheckReport r("holomorphic", tol);
    r.record(std::numeric_limits<double>::infinity(), g.domain().vertices().front());
    return r;
  }
  const auto quads = g.domain().quads();
  std::vector<double> res(quads.size());
  parallel_for(quads.size(), [&](std::size_t i) { res[i] = holomorphic_residual(g, quads[i]); });
  return collect("holomorphic", tol, quads, res);
}

/// The value g3 completing (g1, g2, ., g4) to a quad with cross ratio q.
/// Returns ∞ when the completion is the point at infinity.
inline CInf propagate_fourth(const CInf& g1, const CInf& g2, const CInf& g4, double q) {
  if (q == 0.0 || !std::isfinite(q)) fail(Errc::invalid_argument, "cross ratio must be finite and nonzero");
  if (chordal_distance(g1, g2) <= kMinSeparation || chordal_distance(g1, g4) <= kMinSeparation ||
      chordal_distance(g2, g4) <= kMinSeparation)
    fail(Errc::degenerate, "propagate_fourth needs three distinct values");
  const auto h1 = Homogeneous::of(g1), h2 = Homogeneous::of(g2), h4 = Homogeneous::of(g4);
  const Complex a = bracket(h1, h2);
  const Complex qb = q * bracket(h4, h1);
  return from_homogeneous({a * h4.num + qb * h2.num, a * h4.den + qb * h2.den});
}

/// Discrete z^gamma on {0..M-1} x {0..N-1} with cross ratio -1 on every quad.
/// For gamma > 2 the origin is removed from the domain.
inline HoloGrid power_function(double gamma, int M, int N) {
  if (!(gamma > 0.0) || gamma == 2.0 || gamma >= 4.0 || !std::isfinite(gamma))
    fail(Errc::unsupported_gamma, "gamma must lie in (0,2) or (2,4), got " + std::to_string(gamma));
  if (M < 2 || N < 2) fail(Errc::invalid_argument, "power_function needs extents >= 2");

  // Work on the full rectangle first; the origin quad is needed as a seed even
  // when it is removed from the final domain.
  HoloField work(LatticeDomain::rectangle(M, N));
  work[{0, 0}] = 0.0;
  work[{1, 0}] = 1.0;
  // i^gamma, exact for the integer exponents.
  work[{0, 1}] = gamma == 1.0   ? Complex(0.0, 1.0)
                 : gamma == 3.0 ? Complex(0.0, -1.0)
                                : std::polar(1.0, gamma * std::numbers::pi / 2.0);

  auto axis = [&](Vertex step) {
    const int extent = step.m ? M : N;
    for (int k = 1; k + 1 < extent; ++k) {
      const Complex gk = work[Vertex{step.m * k, step.n * k}].z;
      const Complex a = gk - work[Vertex{step.m * (k - 1), step.n * (k - 1)}].z;
      const Complex denom = 2.0 * k * a - gamma * gk;
      if (std::abs(denom) <= 1e-14 * std::abs(gamma * gk))
        fail(Errc::propagation_blowup, "axis recurrence hits infinity at k = " + std::to_string(k));
      work[Vertex{step.m * (k + 1), step.n * (k + 1)}] = gk + cdiv(gamma * gk * a, denom);
    }
  };
  axis(kStepM);
  axis(kStepN);

  for (int s = 2; s <= M + N - 2; ++s) {
    for (int m = 1; m < M; ++m) {
      const int n = s - m;
      if (n < 1 || n >= N) continue;
      const CInf v = propagate_fourth(work[{m - 1, n - 1}], work[{m, n - 1}], work[{m - 1, n}], -1.0);
      if (!v.finite()) fail(Errc::propagation_blowup, "interior value at infinity at " + to_string({m, n}));
      work[{m, n}] = v;
    }
  }

  if (gamma < 2.0) {
    const auto dom = work.domain();
    return {std::move(work), EdgeLabels::constant(dom, 1.0, -1.0)};
  }
  HoloGrid out{HoloField(LatticeDomain::rectangle(M, N, {{0, 0}})), {}};
  for (const auto& v : out.domain().vertices()) out[v] = work[v];
  out.labels = EdgeLabels::constant(out.domain(), 1.0, -1.0);
  return out;
}

/// Applies a Möbius map vertexwise. Labels are unchanged.
inline HoloGrid mobius_apply(const HoloGrid& g, const MobiusMap& map) {
  HoloGrid out{g.values.map([&](const CInf& z) { return map(z); }), g.labels};
  for (const auto& q : out.domain().quads()) {
    const auto v = out.values.quad(q);
    for (int i = 0; i < 4; ++i) {
      if (chordal_distance(v[i], v[(i + 1) % 4]) <= kMinSeparation)
        fail(Errc::pole_on_grid, "quad " + to_string(q) + " degenerates under the map");
    }
  }
  return out;
}

/// Reflection of the Riemann sphere in the great circle orthogonal to `axis`,
/// written in the plane: a reflection in a line through 0 or an inversion in a circle.
inline CInf reflect_in_great_circle(const CInf& g, const Vec3& axis) {
  const Vec3 nu = axis.normalized();
  const Complex nc(nu.x(), nu.y());
  if (std::abs(nu.z()) <= 1e-14) {
    if (g.inf) return g;
    return -(nc / std::conj(nc)) * std::conj(g.z);
  }
  const Complex c0 = -nc / nu.z();
  const double rho2 = 1.0 + std::norm(c0);
  if (g.inf) return c0;
  const Complex d = g.z - c0;
  if (std::abs(d) <= 1e-300) return CInf::infinity();
  return c0 + rho2 / std::conj(d);
}

// ---------------------------------------------------------------------------
// File conversion
// ---------------------------------------------------------------------------

inline NetFile to_net_file(const HoloGrid& g) {
  NetFile f;
  f.kind = "holo";
  f.net = g.values.map([](const CInf& z) { return z.inf ? Vec3::Zero().eval() : Vec3(z.z.real(), z.z.imag(), 0.0); });
  for (const auto& v : g.domain().vertices())
    if (g[v].inf) f.infinity.push_back(v);
  f.labels = g.labels;
  return f;
}

inline HoloGrid holo_from_net_file(const NetFile& f) {
  if (f.kind != "holo") fail(Errc::parse_error, "expected a file of kind 'holo', got '" + f.kind + "'");
  HoloGrid g{f.net.map([](const Vec3& p) { return CInf(p.x(), p.y()); }), {}};
  for (const auto& v : f.infinity) g[v] = CInf::infinity();
  g.labels = f.labels ? *f.labels : EdgeLabels::constant(g.domain(), 1.0, -1.0);
  return g;
}

}  // namespace minnet

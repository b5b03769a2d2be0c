#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "minnet/error.hpp"
#include "minnet/holomorphic.hpp"
#include "minnet/levenberg_marquardt.hpp"
#include "minnet/mobius.hpp"

namespace minnet {

enum class PlatonicPreset { tetrahedral, octahedral };

inline std::string to_string(PlatonicPreset p) { return p == PlatonicPreset::tetrahedral ? "tetrahedral" : "octahedral"; }

/// Boundary data for a cross-ratio -1 grid on {0..m_max} x {0..n_max} whose
/// values fill a spherical triangle of the Gauss sphere, seen in the plane:
///   A = g(0,0) = 0 with the row n = 0 on the positive real axis and the
///   column m = 0 on the ray arg = angle_A;
///   C = g(0, n_max) on that ray;
///   the row n = n_max on the circle through C and B, approaching the vertex
///   B on the real axis as m grows.
/// The k-noid case has angle_A = (k-1)pi/k and right angles at B and C, so the
/// third side is the unit circle.
struct BoundarySpec {
  int k{3};
  int n_max{3};
  int m_max{10};
  double angle_A{2.0 * std::numbers::pi / 3.0};
  double angle_B{std::numbers::pi / 2.0};
  double angle_C{std::numbers::pi / 2.0};
  std::optional<PlatonicPreset> preset;

  static BoundarySpec knoid(int k, int n_max, int m_max) {
    if (k < 3) fail(Errc::invalid_argument, "k-noid needs k >= 3");
    BoundarySpec s;
    s.k = k;
    s.n_max = n_max;
    s.m_max = m_max;
    s.angle_A = (k - 1) * std::numbers::pi / k;
    return s;
  }

  /// Triangle of the Gauss map for the Platonic families. The corner angles of
  /// the symmetry triangle are pi/3 at A, pi/2 at C and pi/3 (tetrahedral) or
  /// pi/4 (octahedral) at the end B; the Gauss image has the supplementary
  /// angles at the two finite corners.
  static BoundarySpec platonic(PlatonicPreset p, int resolution) {
    BoundarySpec s;
    s.k = 3;
    s.preset = p;
    s.n_max = resolution;
    s.m_max = 3 * resolution + 1;
    const double pi = std::numbers::pi;
    s.angle_A = pi - pi / 3.0;
    s.angle_C = pi - pi / 2.0;
    s.angle_B = p == PlatonicPreset::tetrahedral ? pi / 3.0 : pi / 4.0;
    return s;
  }
};

/// Planar picture of the spherical triangle with angles (a, b, c) at A, B, C.
struct TriangleGeometry {
  double angle_A{0.0};
  Complex B, C;   ///< vertex B on the real axis, vertex C on the ray arg = angle_A
  Complex c0;     ///< center of the circle carrying the side BC
  double rho{1.0};
  double theta_C{0.0}, theta_B{0.0};  ///< arguments of C and B seen from c0 (short arc)

  static TriangleGeometry make(double a, double b, double c) {
    const double cos_side_b = (std::cos(b) + std::cos(a) * std::cos(c)) / (std::sin(a) * std::sin(c));
    const double cos_side_c = (std::cos(c) + std::cos(a) * std::cos(b)) / (std::sin(a) * std::sin(b));
    if (!(std::abs(cos_side_b) < 1.0) || !(std::abs(cos_side_c) < 1.0))
      fail(Errc::infeasible_spec, "corner angles do not form a spherical triangle");
    TriangleGeometry t;
    t.angle_A = a;
    t.B = std::tan(std::acos(cos_side_c) / 2.0);
    t.C = std::tan(std::acos(cos_side_b) / 2.0) * std::polar(1.0, a);
    const Vec3 nu = stereographic_lift(t.B).cross(stereographic_lift(t.C));
    if (std::abs(nu.z()) <= 1e-14) fail(Errc::infeasible_spec, "third side passes through infinity");
    t.c0 = -Complex(nu.x(), nu.y()) / nu.z();
    t.rho = std::sqrt(1.0 + std::norm(t.c0));
    t.theta_C = std::arg(t.C - t.c0);
    t.theta_B = std::arg(t.B - t.c0);
    while (t.theta_B - t.theta_C > std::numbers::pi) t.theta_B -= 2.0 * std::numbers::pi;
    while (t.theta_C - t.theta_B > std::numbers::pi) t.theta_B += 2.0 * std::numbers::pi;
    return t;
  }

  /// Distance from 0 to the circle along the direction psi.
  [[nodiscard]] double radial(double psi) const {
    const double b = (std::polar(1.0, -psi) * c0).real();
    return b + std::sqrt(b * b - std::norm(c0) + rho * rho);
  }

  [[nodiscard]] Complex arc(double theta) const { return c0 + std::polar(rho, theta); }
};

/// Distance of g outside the filled triangle (0 inside).
inline double outside_distance(const TriangleGeometry& t, Complex g) {
  return std::max({0.0, -g.imag(), (g * std::polar(1.0, -t.angle_A)).imag(), std::abs(g - t.c0) - t.rho});
}

namespace detail {

/// Cumulative sums of exponentials: strictly increasing values in [0, 1],
/// ending at 1 when `closed`, otherwise staying below 1.
inline std::vector<double> monotone_decode(const double* p, int count, bool closed) {
  std::vector<double> s{0.0};
  for (int i = 0; i < count; ++i) s.push_back(s.back() + std::exp(p[i]));
  if (closed) s.push_back(s.back() + 1.0);
  const double total = closed ? s.back() : s.back() + 1.0;
  for (auto& v : s) v /= total;
  return s;
}

inline std::vector<double> monotone_encode(const std::vector<double>& fr, bool closed) {
  std::vector<double> p;
  const std::size_t gaps = fr.size() - 1;
  if (closed) {
    const double last = fr[gaps] - fr[gaps - 1];
    for (std::size_t i = 0; i + 1 < gaps; ++i) p.push_back(std::log((fr[i + 1] - fr[i]) / last));
  } else {
    const double tail = 1.0 - fr.back();
    for (std::size_t i = 0; i < gaps; ++i) p.push_back(std::log((fr[i + 1] - fr[i]) / tail));
  }
  return p;
}

}  // namespace detail

/// The discretized boundary-value problem. Unknowns: monotone encodings of the
/// bottom row, the left column and the arc angles of the top row, followed by
/// the raw values of all remaining vertices (interior and the open right end).
class TriangleProblem {
 public:
  TriangleProblem(const BoundarySpec& spec, TriangleGeometry geom) : spec_(spec), geom_(geom) {}

  [[nodiscard]] int row_params() const { return spec_.m_max; }
  [[nodiscard]] int column_params() const { return spec_.n_max - 1; }
  [[nodiscard]] int arc_params() const { return spec_.m_max; }
  [[nodiscard]] int boundary_params() const { return row_params() + column_params() + arc_params(); }
  [[nodiscard]] int free_vertices() const { return spec_.m_max * (spec_.n_max - 1); }
  [[nodiscard]] int parameter_count() const { return boundary_params() + 2 * free_vertices(); }
  [[nodiscard]] const TriangleGeometry& geometry() const { return geom_; }

  [[nodiscard]] HoloField grid(const VecX& p) const {
    const int M = spec_.m_max, N = spec_.n_max;
    HoloField g(LatticeDomain::rectangle(M + 1, N + 1));
    const auto x = detail::monotone_decode(p.data(), row_params(), false);
    const auto r = detail::monotone_decode(p.data() + row_params(), column_params(), true);
    const auto th = detail::monotone_decode(p.data() + row_params() + column_params(), arc_params(), false);
    const Complex ray = std::polar(1.0, geom_.angle_A);
    for (int m = 0; m <= M; ++m) {
      g[{m, 0}] = geom_.B * x[static_cast<std::size_t>(m)];
      g[{m, N}] = geom_.arc(geom_.theta_C + (geom_.theta_B - geom_.theta_C) * th[static_cast<std::size_t>(m)]);
    }
    for (int n = 1; n < N; ++n) g[{0, n}] = std::abs(geom_.C) * r[static_cast<std::size_t>(n)] * ray;
    g[{0, N}] = geom_.C;
    Eigen::Index i = boundary_params();
    for (int m = 1; m <= M; ++m)
      for (int n = 1; n < N; ++n, i += 2) g[{m, n}] = Complex(p[i], p[i + 1]);
    return g;
  }

  /// Per-quad normalized cross-ratio defects (two reals each), then
  /// containment penalties for the unconstrained vertices.
  [[nodiscard]] VecX residual(const VecX& p) const {
    const auto g = grid(p);
    const int M = spec_.m_max, N = spec_.n_max;
    VecX out(2 * M * N + 3 * free_vertices());
    Eigen::Index i = 0;
    for (int m = 0; m < M; ++m)
      for (int n = 0; n < N; ++n) {
        const Complex a = g[{m, n}].z, b = g[{m + 1, n}].z, c = g[{m + 1, n + 1}].z, d = g[{m, n + 1}].z;
        const double scale = std::abs(a - b) * std::abs(c - d) + std::abs(b - c) * std::abs(d - a);
        const Complex e = ((a - b) * (c - d) + (b - c) * (d - a)) / std::max(scale, 1e-300);
        out[i++] = e.real();
        out[i++] = e.imag();
      }
    for (int m = 1; m <= M; ++m)
      for (int n = 1; n < N; ++n) {
        const Complex z = g[{m, n}].z;
        out[i++] = std::max(0.0, -z.imag());
        out[i++] = std::max(0.0, (z * std::polar(1.0, -geom_.angle_A)).imag());
        out[i++] = std::max(0.0, std::abs(z - geom_.c0) - geom_.rho);
      }
    return out;
  }

  /// Parameters reproducing given grid values (boundary values must respect
  /// the monotone structure).
  [[nodiscard]] VecX encode(const HoloField& g) const {
    const int M = spec_.m_max, N = spec_.n_max;
    std::vector<double> fx, fr, ft;
    for (int m = 0; m <= M; ++m) {
      fx.push_back(g[{m, 0}].z.real() / geom_.B.real());
      ft.push_back((std::arg(g[{m, N}].z - geom_.c0) - geom_.theta_C) / (geom_.theta_B - geom_.theta_C));
    }
    for (int n = 0; n <= N; ++n) fr.push_back(std::abs(g[{0, n}].z) / std::abs(geom_.C));
    VecX p(parameter_count());
    Eigen::Index i = 0;
    for (const auto& part : {detail::monotone_encode(fx, false), detail::monotone_encode(fr, true),
                             detail::monotone_encode(ft, false)})
      for (double v : part) p[i++] = v;
    for (int m = 1; m <= M; ++m)
      for (int n = 1; n < N; ++n) {
        p[i++] = g[{m, n}].z.real();
        p[i++] = g[{m, n}].z.imag();
      }
    return p;
  }

 private:
  BoundarySpec spec_;
  TriangleGeometry geom_;
};

inline void check_feasible(const BoundarySpec& s) {
  if (s.n_max < 1) fail(Errc::infeasible_spec, "n_max must be at least 1");
  if (s.m_max < 2 || s.m_max < s.n_max)
    fail(Errc::infeasible_spec, "m_max = " + std::to_string(s.m_max) + " is too small to reach the arc");
  if (s.preset && (s.m_max - 1) * (s.n_max - 1) <= 1)
    fail(Errc::infeasible_spec, "resolution leaves at most one interior vertex");
}

/// Residual of the k-noid problem (or any triangle problem) at parameters p.
inline VecX knoid_residual(const VecX& p, const BoundarySpec& spec) {
  const TriangleProblem prob(spec, TriangleGeometry::make(spec.angle_A, spec.angle_B, spec.angle_C));
  if (p.size() != prob.parameter_count()) fail(Errc::invalid_argument, "parameter vector has the wrong length");
  return prob.residual(p);
}

/// Seed values: g(w) = (tanh w)^(2 angle_A / pi) on the w-grid of spacing
/// pi / (4 n_max), pushed radially so that |tanh w| = 1 lands on the third side.
inline HoloField seed_grid(const BoundarySpec& spec, const TriangleGeometry& geom) {
  HoloField g(LatticeDomain::rectangle(spec.m_max + 1, spec.n_max + 1));
  const double h = std::numbers::pi / (4.0 * spec.n_max);
  const double power = 2.0 * geom.angle_A / std::numbers::pi;
  for (const auto& v : g.domain().vertices()) {
    if (v.m == 0 && v.n == 0) {
      g[v] = 0.0;
      continue;
    }
    const Complex z = std::pow(std::tanh(Complex(h * v.m, h * v.n)), power);
    g[v] = z * geom.radial(std::arg(z));
  }
  return g;
}

struct SolveOptions {
  double tol{1e-10};           ///< cross-ratio residual required for convergence
  double boundary_tol{1e-9};   ///< boundary-condition residual required for convergence
  int max_iter{500};
  int homotopy_steps{-1};      ///< -1: none for k-noids, 10 for Platonic presets
  std::optional<VecX> initial; ///< start parameters instead of the seed
};

struct SolveResult {
  HoloGrid grid;
  BoundarySpec spec;
  VecX params;
  double cross_ratio_residual{0.0};
  double boundary_residual{0.0};
  int iterations{0};
  bool converged{false};
};

/// Largest violation of the boundary conditions: corner values, row on the
/// real axis, column on the ray, top row on the circle, strict monotonicity
/// along the three sides, and containment of every value in the triangle.
inline double boundary_residual(const HoloField& g, const BoundarySpec& s, const TriangleGeometry& t) {
  const int M = s.m_max, N = s.n_max;
  double r = std::max(std::abs(g[{0, 0}].z), std::abs(g[{0, N}].z - t.C));
  const Complex ray = std::polar(1.0, -t.angle_A);
  for (int m = 0; m <= M; ++m) {
    r = std::max(r, std::abs(g[{m, 0}].z.imag()));
    r = std::max(r, std::abs(std::abs(g[{m, N}].z - t.c0) - t.rho));
    if (m > 0) {
      r = std::max(r, std::max(0.0, g[{m - 1, 0}].z.real() - g[{m, 0}].z.real()));
      const double step = (std::arg(g[{m, N}].z - t.c0) - std::arg(g[{m - 1, N}].z - t.c0)) *
                          (t.theta_B > t.theta_C ? 1.0 : -1.0);
      r = std::max(r, std::max(0.0, -step));
    }
  }
  for (int n = 0; n <= N; ++n) {
    r = std::max(r, std::abs((g[{0, n}].z * ray).imag()));
    if (n > 0) r = std::max(r, std::max(0.0, std::abs(g[{0, n - 1}].z) - std::abs(g[{0, n}].z)));
  }
  for (const auto& v : g.domain().vertices()) r = std::max(r, outside_distance(t, g[v].z));
  return r;
}

/// Solves the triangle problem by damped least squares. Platonic presets are
/// reached by a homotopy in the corner angles starting from right angles at
/// B and C.
inline SolveResult solve_triangle(const BoundarySpec& spec, const SolveOptions& opt = {}) {
  check_feasible(spec);
  const double half_pi = std::numbers::pi / 2.0;
  const int steps = opt.homotopy_steps >= 0 ? opt.homotopy_steps : (spec.preset ? 10 : 0);
  auto geom_at = [&](double t) {
    return TriangleGeometry::make(spec.angle_A, (1 - t) * half_pi + t * spec.angle_B, (1 - t) * half_pi + t * spec.angle_C);
  };
  TriangleGeometry geom = geom_at(steps == 0 ? 1.0 : 0.0);
  VecX p = opt.initial ? *opt.initial : TriangleProblem(spec, geom).encode(seed_grid(spec, geom));
  if (p.size() != TriangleProblem(spec, geom).parameter_count())
    fail(Errc::invalid_argument, "initial parameter vector has the wrong length");

  LmOptions lm;
  lm.max_iter = opt.max_iter;
  lm.target = 1e-14;
  const Eigen::Index nb = TriangleProblem(spec, geom).boundary_params();
  // Clip the exponential encodings only; vertex values are free.
  lm.project = [nb](VecX& v) { v.head(nb) = v.head(nb).cwiseMax(-12.0).cwiseMin(12.0); };

  SolveResult out;
  out.spec = spec;
  for (int s = 0; s <= steps; ++s) {
    if (s > 0) {
      const TriangleGeometry next = geom_at(static_cast<double>(s) / steps);
      for (Eigen::Index i = nb; i < p.size(); i += 2) {
        const Complex z(p[i], p[i + 1]);
        const double psi = std::arg(z);
        const Complex w = z * (next.radial(psi) / geom.radial(psi));
        p[i] = w.real();
        p[i + 1] = w.imag();
      }
      geom = next;
    }
    const TriangleProblem prob(spec, geom);
    const auto res = levenberg_marquardt([&prob](const VecX& x) { return prob.residual(x); }, p, lm);
    p = res.x;
    out.iterations += res.iterations;
  }

  const TriangleProblem prob(spec, geom);
  const HoloField values = prob.grid(p);
  out.grid = HoloGrid{values, EdgeLabels::constant(values.domain(), 1.0, -1.0)};
  out.params = p;
  out.cross_ratio_residual = validate_holomorphic(out.grid).max_residual;
  out.boundary_residual = boundary_residual(values, spec, geom);
  out.converged = out.cross_ratio_residual <= opt.tol && out.boundary_residual <= opt.boundary_tol;
  return out;
}

inline SolveResult solve_knoid(const BoundarySpec& spec, const SolveOptions& opt = {}) {
  if (spec.preset) fail(Errc::invalid_argument, "solve_knoid given a Platonic spec");
  return solve_triangle(spec, opt);
}

inline SolveResult solve_platonic(PlatonicPreset preset, int resolution, const SolveOptions& opt = {}) {
  return solve_triangle(BoundarySpec::platonic(preset, resolution), opt);
}

/// Throws NoConvergence for a result that missed its tolerances.
inline const SolveResult& require_converged(const SolveResult& r) {
  if (!r.converged)
    fail(Errc::no_convergence, "solver stopped after " + std::to_string(r.iterations) +
                                   " iterations with cross-ratio residual " + std::to_string(r.cross_ratio_residual) +
                                   " and boundary residual " + std::to_string(r.boundary_residual));
  return r;
}

}  // namespace minnet

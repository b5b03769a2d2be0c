#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "minnet/bvp.hpp"
#include "minnet/curvature.hpp"
#include "minnet/holomorphic.hpp"
#include "minnet/minimal.hpp"
#include "minnet/net_checks.hpp"
#include "minnet/orbit.hpp"
#include "minnet/reflection.hpp"

namespace minnet {

/// Which surface to build.
struct Family {
  enum class Kind { enneper, planar_enneper, knoid, platonic };
  Kind kind{Kind::enneper};
  int k{3};
  int size{20};
  int n_max{3};
  int m_max{10};
  PlatonicPreset preset{PlatonicPreset::tetrahedral};
  int resolution{3};
};

struct GenerateOptions {
  double tol{1e-9};
  bool orbit{false};
  SolveOptions solve;
  OrbitOptions orbit_options;
};

struct BoundaryEntry {
  BoundaryAnalysis isothermic;
  std::optional<BoundaryAnalysis> asymptotic;
  bool dual_agree{true};
};

struct Verification {
  std::vector<CheckReport> checks;
  std::vector<BoundaryEntry> boundaries;

  [[nodiscard]] bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    for (const auto& b : boundaries)
      if (!b.dual_agree || !b.isothermic.consistent || (b.asymptotic && !b.asymptotic->consistent)) return false;
    return true;
  }

  [[nodiscard]] const CheckReport* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

inline CheckReport single(std::string name, double tol, double residual, std::optional<Vertex> where = std::nullopt) {
  CheckReport r(std::move(name), tol);
  r.record(residual, where.value_or(Vertex{}));
  if (!where) r.worst.reset();
  return r;
}

inline CheckReport unit_normals(const Net3& n, double tol) {
  const auto verts = n.domain().vertices();
  std::vector<double> res;
  for (const auto& v : verts) res.push_back(std::abs(n[v].norm() - 1.0));
  return collect("unit normals", tol, verts, res);
}

inline CheckReport parallel_check(const Net3& f, const Net3& g, double tol, std::string name) {
  const auto p = are_parallel_meshes(f, g, tol);
  return single(std::move(name), tol, p.worst_angle, p.where);
}

}  // namespace detail

/// Invariants of a circular net with optional labels and Gauss map.
inline Verification verify_isothermic_net(const Net3& f, const std::optional<EdgeLabels>& labels,
                                          const std::optional<Net3>& n, double tol = 1e-9) {
  Verification v;
  v.checks.push_back(check_circular(f, tol));
  if (!v.checks.back().pass) return v;
  if (labels) v.checks.push_back(is_isothermic(f, *labels, tol));
  if (n) {
    v.checks.push_back(detail::unit_normals(*n, tol));
    v.checks.push_back(detail::parallel_check(f, *n, tol, "parallel F N"));
    v.checks.push_back(check_minimal(f, *n, tol));
    v.checks.push_back(check_steiner(f, *n, {-1.0, -0.5, 0.25, 1.0}, tol));
    for (const auto& b : boundaries_of(f.domain()))
      v.boundaries.push_back({analyze_boundary_isothermic(f, *n, b, tol), std::nullopt, true});
  }
  return v;
}

inline Verification verify_asymptotic_net(const Net3& ft, double tol = 1e-9) {
  Verification v;
  const auto a = is_asymptotic(ft, tol);
  v.checks.push_back(a.stars);
  auto nondeg = detail::single("quad non-degeneracy", 0.0, static_cast<double>(a.degenerate_quads), a.flattest);
  v.checks.push_back(nondeg);
  return v;
}

/// Every invariant of a generated minimal pair.
inline Verification verify_pair(const MinimalPair& p, double tol = 1e-9) {
  Verification v;
  v.checks.push_back(validate_holomorphic(p.g, tol));
  v.checks.push_back(p.closure_F);
  v.checks.push_back(p.closure_F_tilde);
  auto iso = verify_isothermic_net(p.F, p.g.labels, p.N, tol);
  for (auto& c : iso.checks) v.checks.push_back(std::move(c));
  auto gauss = compare_normals_up_to_sign(p.N, gauss_map(p.g), tol);
  gauss.name = "gauss map lift";
  v.checks.push_back(gauss);
  for (auto& c : verify_asymptotic_net(p.F_tilde, tol).checks) v.checks.push_back(std::move(c));
  v.checks.push_back(compare_normals_up_to_sign(tangent_normals(p.F_tilde), p.N, tol));
  for (auto& b : iso.boundaries) {
    b.asymptotic = analyze_boundary_asymptotic(p.F_tilde, b.isothermic.boundary, tol);
    b.dual_agree = (b.isothermic.kind == BoundaryAnalysis::Kind::planar_curvature_line) ==
                   (b.asymptotic->kind == BoundaryAnalysis::Kind::straight_asymptotic_line);
    v.boundaries.push_back(std::move(b));
  }
  return v;
}

struct Generated {
  Family family;
  MinimalPair pair;
  std::optional<SolveResult> solve;
  std::vector<Boundary> symmetry;  ///< boundaries whose planes generate the symmetry group
  std::size_t expected_group_order{0};
  std::optional<SymmetryOrbit> orbit;
  Verification report;
};

inline std::string family_name(const Family& f) {
  switch (f.kind) {
    case Family::Kind::enneper: return "enneper";
    case Family::Kind::planar_enneper: return "planar_enneper";
    case Family::Kind::knoid: return "knoid";
    default: return "platonic";
  }
}

/// Symmetry group generated by the reflections in the planes of the given
/// boundaries of F, assembled into a welded mesh and checked for invariance.
inline SymmetryOrbit orbit_from_boundaries(const MinimalPair& p, const std::vector<Boundary>& bs, double tol,
                                           const OrbitOptions& opt = {}) {
  std::vector<Isometry> gens;
  for (const auto& b : bs) {
    const auto a = analyze_boundary_isothermic(p.F, p.N, b, tol);
    if (a.kind != BoundaryAnalysis::Kind::planar_curvature_line)
      fail(Errc::not_reflectable, to_string(b) + " does not carry a symmetry plane");
    gens.push_back(Isometry::reflection(*a.plane));
  }
  return build_orbit(p.F, gens, opt);
}

inline Generated generate(const Family& fam, const GenerateOptions& opt = {}) {
  Generated out;
  out.family = fam;
  HoloGrid g;
  switch (fam.kind) {
    case Family::Kind::enneper:
      if (fam.k < 1) fail(Errc::invalid_argument, "enneper needs k >= 1");
      g = power_function(2.0 * fam.k / (fam.k + 1.0), fam.size, fam.size);
      out.symmetry = {Boundary::row(0), Boundary::column(0)};
      out.expected_group_order = 2 * static_cast<std::size_t>(fam.k + 1);
      break;
    case Family::Kind::planar_enneper:
      g = power_function(3.0, fam.size, fam.size);
      out.symmetry = {Boundary::row(0), Boundary::column(0)};
      out.expected_group_order = 4;
      break;
    case Family::Kind::knoid:
      out.solve = require_converged(solve_knoid(BoundarySpec::knoid(fam.k, fam.n_max, fam.m_max), opt.solve));
      g = out.solve->grid;
      out.symmetry = {Boundary::row(0), Boundary::column(0), Boundary::row(fam.n_max)};
      out.expected_group_order = 4 * static_cast<std::size_t>(fam.k);
      break;
    case Family::Kind::platonic:
      out.solve = require_converged(solve_platonic(fam.preset, fam.resolution, opt.solve));
      g = out.solve->grid;
      out.symmetry = {Boundary::row(0), Boundary::column(0), Boundary::row(fam.resolution)};
      out.expected_group_order = fam.preset == PlatonicPreset::tetrahedral ? 24 : 48;
      break;
  }
  out.pair = make_minimal_pair(g, opt.tol);
  out.report = verify_pair(out.pair, opt.tol);
  for (const auto& b : out.symmetry) {
    const auto a = analyze_boundary_isothermic(out.pair.F, out.pair.N, b, opt.tol);
    out.report.checks.push_back(detail::single("symmetry plane " + to_string(b), opt.tol, a.fit_residual));
  }
  if (out.solve) {
    out.report.checks.push_back(detail::single("solver cross ratio", opt.solve.tol, out.solve->cross_ratio_residual));
    out.report.checks.push_back(detail::single("solver boundary", opt.solve.boundary_tol, out.solve->boundary_residual));
  }
  if (opt.orbit) {
    out.orbit = orbit_from_boundaries(out.pair, out.symmetry, opt.tol, opt.orbit_options);
    const double order_gap = std::abs(static_cast<double>(out.orbit->elements.size()) -
                                      static_cast<double>(out.expected_group_order));
    out.report.checks.push_back(detail::single("orbit group order", 0.0, order_gap));
    out.report.checks.push_back(detail::single("orbit weld", opt.tol, out.orbit->weld_residual));
    double inv = 0.0;
    for (const auto& gen : out.orbit->generators) {
      const auto r = check_invariance(*out.orbit, gen, opt.tol);
      inv = std::max(inv, r.bijective ? r.max_residual : std::numeric_limits<double>::infinity());
    }
    out.report.checks.push_back(detail::single("orbit invariance", opt.tol, inv));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON reports
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const CheckReport& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["tolerance"] = c.tolerance;
  j["max_residual"] = c.max_residual;  // non-finite values serialize as null
  if (c.worst) j["worst"] = {c.worst->m, c.worst->n};
  j["checked"] = c.checked;
  j["failures"] = c.failures;
  return j;
}

inline nlohmann::ordered_json to_json(const BoundaryAnalysis& a) {
  nlohmann::ordered_json j;
  j["boundary"] = to_string(a.boundary);
  j["kind"] = to_string(a.kind);
  j["gauss_circle"] = to_string(a.gauss);
  j["fit_residual"] = a.fit_residual;
  j["great_residual"] = a.great_residual;
  j["consistent"] = a.consistent;
  if (a.plane) j["plane"] = {{"normal", {a.plane->normal.x(), a.plane->normal.y(), a.plane->normal.z()}}, {"offset", a.plane->offset}};
  if (a.line)
    j["line"] = {{"base", {a.line->base.x(), a.line->base.y(), a.line->base.z()}},
                 {"direction", {a.line->direction.x(), a.line->direction.y(), a.line->direction.z()}}};
  return j;
}

inline nlohmann::ordered_json to_json(const Verification& v) {
  nlohmann::ordered_json j;
  j["pass"] = v.pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : v.checks) j["checks"].push_back(to_json(c));
  j["boundaries"] = nlohmann::ordered_json::array();
  for (const auto& b : v.boundaries) {
    nlohmann::ordered_json e;
    e["isothermic"] = to_json(b.isothermic);
    if (b.asymptotic) e["asymptotic"] = to_json(*b.asymptotic);
    e["dual_agree"] = b.dual_agree;
    j["boundaries"].push_back(e);
  }
  return j;
}

inline nlohmann::ordered_json to_json(const Generated& g) {
  nlohmann::ordered_json j;
  j["family"] = family_name(g.family);
  j["report"] = to_json(g.report);
  if (g.solve) {
    j["solver"] = {{"iterations", g.solve->iterations},
                   {"converged", g.solve->converged},
                   {"cross_ratio_residual", g.solve->cross_ratio_residual},
                   {"boundary_residual", g.solve->boundary_residual}};
  }
  if (g.orbit) {
    j["orbit"] = {{"elements", g.orbit->elements.size()},
                  {"vertices", g.orbit->vertices.size()},
                  {"faces", g.orbit->faces.size()},
                  {"weld_residual", g.orbit->weld_residual}};
  }
  return j;
}

}  // namespace minnet

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "minnet/minnet.hpp"
#include "oracles.hpp"

using namespace minnet;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass{true};
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

const double kPi = std::numbers::pi;

Generated build(Family::Kind kind, int k, bool orbit = false) {
  Family fam;
  fam.kind = kind;
  fam.k = k;
  fam.size = 12;
  GenerateOptions opt;
  opt.orbit = orbit;
  return generate(fam, opt);
}

Generated build_platonic(PlatonicPreset p, bool orbit) {
  Family fam;
  fam.kind = Family::Kind::platonic;
  fam.preset = p;
  GenerateOptions opt;
  opt.orbit = orbit;
  return generate(fam, opt);
}

/// Every generated example used by the boundary criteria.
std::vector<Generated> all_examples() {
  std::vector<Generated> out;
  for (int k = 1; k <= 4; ++k) out.push_back(build(Family::Kind::enneper, k));
  out.push_back(build(Family::Kind::planar_enneper, 0));
  for (int k = 3; k <= 5; ++k) out.push_back(build(Family::Kind::knoid, k));
  out.push_back(build_platonic(PlatonicPreset::tetrahedral, false));
  out.push_back(build_platonic(PlatonicPreset::octahedral, false));
  return out;
}

Outcome weierstrass_validity() {
  Outcome o;
  double worst_h = 0.0, worst_circ = 0.0, worst_closure = 0.0, worst_time = 0.0;
  for (double gamma : {1.0, 1.5, 4.0 / 3.0, 3.0}) {
    const auto t0 = Clock::now();
    const auto g = power_function(gamma, 20, 20);
    const auto integ = weierstrass_integrated(g, 1.0, 1e-9);
    const Net3 n = gauss_map(g);
    const auto circ = check_circular(integ.net, 1e-9);
    const auto h = check_minimal(integ.net, n, 1e-9);
    const double dt = seconds_since(t0);
    worst_h = std::max(worst_h, h.max_residual);
    worst_circ = std::max(worst_circ, circ.max_residual);
    worst_closure = std::max(worst_closure, integ.closure.max_residual);
    worst_time = std::max(worst_time, dt);
    o.require(circ.pass && h.pass && integ.closure.pass, "gamma " + fmt("%g", gamma));
  }
  o.require(worst_time < 1.0, "runtime " + fmt("%.3f s", worst_time));
  o.detail += (o.detail.empty() ? "" : " | ") + std::string("max |H| ") + fmt("%.2e", worst_h) + ", circularity " +
              fmt("%.2e", worst_circ) + ", closure " + fmt("%.2e", worst_closure) + ", slowest " +
              fmt("%.3f s", worst_time);
  return o;
}

Outcome conjugacy() {
  Outcome o;
  double stars = 0.0, normals = 0.0;
  for (double gamma : {1.0, 1.5, 4.0 / 3.0, 3.0}) {
    const auto g = power_function(gamma, 20, 20);
    const Net3 ft = weierstrass_asymptotic(g, 1e-9);
    const auto a = is_asymptotic(ft, 1e-9);
    const auto c = compare_normals_up_to_sign(tangent_normals(ft), gauss_map(g), 1e-9);
    stars = std::max(stars, a.stars.max_residual);
    normals = std::max(normals, c.max_residual);
    o.require(a.pass() && c.pass, "gamma " + fmt("%g", gamma));
  }
  o.detail += (o.detail.empty() ? "" : " | ") + std::string("star coplanarity ") + fmt("%.2e", stars) +
              ", normal mismatch " + fmt("%.2e", normals);
  return o;
}

Outcome steiner(const std::vector<Generated>& examples) {
  Outcome o;
  auto rng = oracle::rng(2024);
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto& ex = examples[static_cast<std::size_t>(i) % examples.size()];
    const auto quads = ex.pair.F.domain().quads();
    std::uniform_int_distribution<std::size_t> uq(0, quads.size() - 1);
    const Vertex q = quads[uq(rng)];
    const double t = ut(rng);
    worst = std::max(worst, steiner_defect(ex.pair.F.quad(q), ex.pair.N.quad(q), t));
  }
  o.require(worst <= 1e-9, "defect above 1e-9");
  o.detail += (o.detail.empty() ? "" : " | ") + std::string("max relative defect ") + fmt("%.2e", worst);
  return o;
}

Outcome angle_anchors(const std::vector<Generated>& examples) {
  Outcome o;
  double worst = 0.0, worst_sum = 0.0;
  for (const auto& ex : examples) {
    double expected = 0.0;
    switch (ex.family.kind) {
      case Family::Kind::enneper:
        if (ex.family.k < 2) continue;
        expected = kPi / (ex.family.k + 1);
        break;
      case Family::Kind::planar_enneper: expected = kPi / 2.0; break;
      case Family::Kind::knoid: expected = kPi / ex.family.k; break;
      default: continue;
    }
    const auto c = corner_angles(ex.pair.F, ex.pair.N, {0, 0}, 1e-9);
    const double err = std::abs(c.angleP - expected);
    const double sum = std::abs(c.angleP + c.angleQ - kPi);
    worst = std::max(worst, err);
    worst_sum = std::max(worst_sum, sum);
    o.require(err <= 1e-6 && sum <= 1e-9, family_name(ex.family) + " k=" + std::to_string(ex.family.k));
  }
  o.detail += (o.detail.empty() ? "" : " | ") + std::string("max angle error ") + fmt("%.2e", worst) +
              ", max |P + Q - pi| " + fmt("%.2e", worst_sum);
  return o;
}

Outcome reflection_theorems(const std::vector<Generated>& examples) {
  Outcome o;
  const double tol = 1e-9;
  double worst = 0.0;
  std::size_t boundaries = 0, extensions = 0;
  for (const auto& ex : examples) {
    const auto& p = ex.pair;
    const std::string name = family_name(ex.family) + " k=" + std::to_string(ex.family.k);
    // Duality on every boundary line.
    for (const auto& b : ex.report.boundaries) {
      ++boundaries;
      o.require(b.dual_agree && b.isothermic.consistent && b.asymptotic && b.asymptotic->consistent,
                name + " " + to_string(b.isothermic.boundary) + " duality");
      if (b.isothermic.kind == BoundaryAnalysis::Kind::planar_curvature_line) {
        worst = std::max({worst, b.isothermic.fit_residual, b.isothermic.great_residual});
        worst = std::max({worst, b.asymptotic->fit_residual, b.asymptotic->axis_residual});
      }
    }
    // Extensions across each symmetry line.
    for (const auto& b : ex.symmetry) {
      ++extensions;
      const auto e = reflect_isothermic(p.F, p.N, b, tol, p.g.labels);
      const auto iso = verify_isothermic_net(e.F, e.labels, e.N, tol);
      for (const auto& c : iso.checks) {
        worst = std::max(worst, c.max_residual);
        o.require(c.pass, name + " reflect " + to_string(b) + " " + c.name);
      }
      const auto r = rotate_extend_asymptotic(p.F_tilde, b, tol, p.N);
      const auto a = is_asymptotic(r.F, tol);
      const auto nn = compare_normals_up_to_sign(tangent_normals(r.F), *r.N, tol);
      worst = std::max({worst, a.stars.max_residual, nn.max_residual});
      o.require(a.pass() && nn.pass, name + " rotate " + to_string(b));
      // Seam quads of the planar extension: the rows touching the mirror line.
      const int seam = b.index;
      for (const auto& q : e.F.domain().quads()) {
        const int idx = b.side == Boundary::Side::row ? q.n : q.m;
        if (idx != seam && idx != seam - 1) continue;
        const double h = std::abs(quad_curvatures(e.F.quad(q), e.N->quad(q)).H);
        worst = std::max(worst, h);
        o.require(h <= tol, name + " seam quad " + to_string(q));
      }
    }
  }
  o.require(worst <= tol, "residual above tolerance");
  o.detail += (o.detail.empty() ? "" : " | ") + std::to_string(boundaries) + " boundaries, " +
              std::to_string(extensions) + " extensions, max residual " + fmt("%.2e", worst);
  return o;
}

Outcome global_closure() {
  Outcome o;
  const auto ex = build(Family::Kind::enneper, 3, true);
  const auto& orbit = *ex.orbit;
  const auto c = corner_angles(ex.pair.F, ex.pair.N, {0, 0});
  o.require(std::abs(c.angleP - kPi / 4.0) <= 1e-9, "planes not at pi/4");
  o.require(orbit.elements.size() == 8, "group order " + std::to_string(orbit.elements.size()));
  o.require(orbit.weld_residual <= 1e-9, "weld residual");
  double inv = 0.0;
  for (const auto& gen : orbit.generators) {
    const auto r = check_invariance(orbit, gen, 1e-9);
    o.require(r.bijective, "generator does not permute the mesh");
    inv = std::max(inv, r.max_residual);
  }
  o.require(inv <= 1e-9, "invariance residual");
  o.detail += (o.detail.empty() ? "" : " | ") + std::string("order ") + std::to_string(orbit.elements.size()) +
              ", weld " + fmt("%.2e", orbit.weld_residual) + ", generator residual " + fmt("%.2e", inv) + ", " +
              std::to_string(orbit.vertices.size()) + " welded vertices";
  return o;
}

Outcome knoid_reproduction() {
  Outcome o;
  std::string info;
  for (int k = 3; k <= 5; ++k) {
    const auto t0 = Clock::now();
    const auto r = solve_knoid(BoundarySpec::knoid(k, 3, 10));
    const double dt = seconds_since(t0);
    o.require(r.converged && r.cross_ratio_residual <= 1e-8 && r.boundary_residual <= 1e-6 && r.iterations <= 500,
              "k=" + std::to_string(k) + " solver");
    o.require(dt < 60.0, "k=" + std::to_string(k) + " runtime");
    const auto ex = build(Family::Kind::knoid, k, true);
    const Isometry rot = ex.orbit->generators[0].compose(ex.orbit->generators[1]);
    const double angle = std::acos(std::clamp((rot.linear.trace() - 1.0) / 2.0, -1.0, 1.0));
    const auto inv = check_invariance(*ex.orbit, rot, 1e-5);
    o.require(std::abs(angle - 2.0 * kPi / k) <= 1e-9, "k=" + std::to_string(k) + " rotation angle");
    o.require(inv.bijective && inv.max_residual <= 1e-5, "k=" + std::to_string(k) + " rotation invariance");
    o.require(ex.orbit->elements.size() == static_cast<std::size_t>(4 * k), "k=" + std::to_string(k) + " orbit");
    info += "k=" + std::to_string(k) + ": " + std::to_string(r.iterations) + " it, cr " +
            fmt("%.1e", r.cross_ratio_residual) + ", bd " + fmt("%.1e", r.boundary_residual) + ", rot " +
            fmt("%.1e", inv.max_residual) + ", " + fmt("%.2f s", dt) + "; ";
  }
  for (const auto& [preset, order] : {std::pair{PlatonicPreset::tetrahedral, 24u}, std::pair{PlatonicPreset::octahedral, 48u}}) {
    const auto ex = build_platonic(preset, true);
    o.require(ex.solve->converged && ex.report.pass(), to_string(preset) + " solve");
    o.require(ex.orbit->elements.size() == order, to_string(preset) + " orbit order");
    info += to_string(preset) + ": order " + std::to_string(ex.orbit->elements.size()) + "; ";
  }
  o.detail += (o.detail.empty() ? "" : " | ") + info;
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  auto rng = oracle::rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> nd;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Mat3 R = Eigen::Quaterniond(Eigen::Vector4d(nd(rng), nd(rng), nd(rng), nd(rng)).normalized()).toRotationMatrix();
    const Vec3 c(4 * u(rng) - 2, 4 * u(rng) - 2, 4 * u(rng) - 2);
    const double r = 0.1 + 3.0 * u(rng);
    double t = 2 * kPi * u(rng);
    std::array<Complex, 4> z;
    std::array<Vec3, 4> p;
    for (int k = 0; k < 4; ++k) {
      t += 0.1 + 1.3 * u(rng);
      z[k] = std::polar(r, t);
      p[k] = c + R * Vec3(z[k].real(), z[k].imag(), 0.0);
    }
    const auto q = cross_ratio_quat(p[0], p[1], p[2], p[3]);
    const Complex ref = oracle::cross_ratio(z[0], z[1], z[2], z[3]);
    const double err = std::max(std::abs(q.re - ref.real()), q.im_mag) / std::max(1.0, std::abs(ref));
    worst = std::max(worst, err);
  }
  o.require(worst <= 1e-10, "quaternionic cross ratio");

  double round_trip = 0.0;
  std::uniform_real_distribution<double> w(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const Complex g1(w(rng), w(rng)), g2(w(rng), w(rng)), g4(w(rng), w(rng));
    double qv = w(rng);
    if (std::abs(qv) < 0.05) qv = 0.5;
    if (std::abs(g1 - g2) < 0.05 || std::abs(g1 - g4) < 0.05 || std::abs(g2 - g4) < 0.05) continue;
    const CInf g3 = propagate_fourth(g1, g2, g4, qv);
    if (g3.inf || std::abs(g3.z) > 1e4) continue;
    const double err = std::abs(oracle::cross_ratio(g1, g2, g3.z, g4) - qv) / std::max(1.0, std::abs(qv));
    round_trip = std::max(round_trip, err);
  }
  o.require(round_trip <= 1e-12, "propagate_fourth round trip");
  o.detail += (o.detail.empty() ? "" : " | ") + std::string("cross ratio agreement ") + fmt("%.2e", worst) +
              ", round trip " + fmt("%.2e", round_trip);
  return o;
}

}  // namespace

int main() {
  const auto examples = all_examples();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Weierstrass validity", weierstrass_validity},
      {"Conjugacy", conjugacy},
      {"Steiner identity", [&] { return steiner(examples); }},
      {"Angle anchors", [&] { return angle_anchors(examples); }},
      {"Reflection theorems", [&] { return reflection_theorems(examples); }},
      {"Global closure", global_closure},
      {"Trinoid reproduction", knoid_reproduction},
      {"Oracle equivalence", oracle_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    failures += !out.pass;
    std::printf("%s [%zu] %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, out.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

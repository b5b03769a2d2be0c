// Command-line front end: generate, conjugate, reflect, orbit, verify, export.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minnet/minnet.hpp"

namespace fs = std::filesystem;
using namespace minnet;

namespace {

enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3 };

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
    case Errc::infeasible_spec:
    case Errc::unsupported_gamma:
    case Errc::parse_error:
    case Errc::domain_mismatch:
    case Errc::not_reflectable:
      return kUsage;
    default:
      return kNumeric;
  }
}

void print_error(const std::string& code, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = code;
  j["message"] = message;
  std::cout << j.dump() << '\n';
  std::cerr << "minnet: " << code << ": " << message << '\n';
}

void summarize(const Verification& v) {
  for (const auto& c : v.checks) {
    std::cerr << (c.pass ? "  ok    " : "  FAIL  ") << c.name << "  max " << c.max_residual << " (tol " << c.tolerance
              << ")";
    if (!c.pass && c.worst) std::cerr << " at " << to_string(*c.worst);
    std::cerr << '\n';
  }
  for (const auto& b : v.boundaries) {
    std::cerr << "  " << to_string(b.isothermic.boundary) << ": " << to_string(b.isothermic.kind);
    if (b.asymptotic) std::cerr << " / " << to_string(b.asymptotic->kind);
    if (!b.dual_agree) std::cerr << "  DUALITY MISMATCH";
    std::cerr << '\n';
  }
  std::cerr << (v.pass() ? "verification passed\n" : "verification FAILED\n");
}

void write_report(const std::optional<std::string>& path, const nlohmann::ordered_json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path) {
    write_text(*path, text);
  } else {
    std::cout << text;
  }
}

NetFile net_file(std::string kind, const Net3& net) {
  NetFile f;
  f.kind = std::move(kind);
  f.net = net;
  return f;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  int k{3};
  int size{20};
  int n_max{3};
  int m_max{10};
  std::string preset{"tetrahedral"};
  int resolution{3};
  int max_iter{500};
  bool orbit{false};
  std::optional<std::string> seed_file;
};

int run_generate(const GenerateArgs& a, double tol, const std::string& out_dir, const std::optional<std::string>& report) {
  Family fam;
  if (a.family == "enneper") {
    fam.kind = Family::Kind::enneper;
  } else if (a.family == "planar_enneper") {
    fam.kind = Family::Kind::planar_enneper;
  } else if (a.family == "knoid") {
    fam.kind = Family::Kind::knoid;
  } else {
    fam.kind = Family::Kind::platonic;
    fam.preset = a.preset == "octahedral" ? PlatonicPreset::octahedral : PlatonicPreset::tetrahedral;
  }
  fam.k = a.k;
  fam.size = a.size;
  fam.n_max = a.n_max;
  fam.m_max = a.m_max;
  fam.resolution = a.resolution;

  GenerateOptions opt;
  opt.tol = tol;
  opt.orbit = a.orbit;
  opt.solve.max_iter = a.max_iter;
  if (a.seed_file) {
    const auto j = nlohmann::json::parse(read_text(*a.seed_file), nullptr, false);
    if (j.is_discarded() || !j.contains("params") || !j["params"].is_array())
      fail(Errc::parse_error, *a.seed_file + ": expected an object with a 'params' array");
    VecX p(static_cast<Eigen::Index>(j["params"].size()));
    for (std::size_t i = 0; i < j["params"].size(); ++i) p[static_cast<Eigen::Index>(i)] = j["params"][i].get<double>();
    opt.solve.initial = p;
  }

  const Generated g = generate(fam, opt);
  fs::create_directories(out_dir);
  const auto at = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

  write_net(at("g.dnet.json"), to_net_file(g.pair.g));
  NetFile f = net_file("isothermic", g.pair.F);
  f.labels = g.pair.g.labels;
  f.normals = g.pair.N;
  f.links = {{"conjugate", "F_tilde.dnet.json"}, {"gauss", "N.dnet.json"}, {"source", "g.dnet.json"}};
  write_net(at("F.dnet.json"), f);
  NetFile ft = net_file("asymptotic", g.pair.F_tilde);
  ft.normals = g.pair.N;
  ft.links = {{"conjugate", "F.dnet.json"}, {"gauss", "N.dnet.json"}, {"source", "g.dnet.json"}};
  write_net(at("F_tilde.dnet.json"), ft);
  write_net(at("N.dnet.json"), net_file("gauss", g.pair.N));
  if (g.solve) {
    nlohmann::ordered_json s;
    s["k"] = g.solve->spec.k;
    s["n_max"] = g.solve->spec.n_max;
    s["m_max"] = g.solve->spec.m_max;
    s["angles"] = {g.solve->spec.angle_A, g.solve->spec.angle_B, g.solve->spec.angle_C};
    s["iterations"] = g.solve->iterations;
    s["converged"] = g.solve->converged;
    s["params"] = std::vector<double>(g.solve->params.data(), g.solve->params.data() + g.solve->params.size());
    write_text(at("solver.json"), s.dump(2) + "\n");
  }
  if (g.orbit) {
    write_text(at("orbit.json"), orbit_to_json_text(*g.orbit));
    write_text(at("orbit.obj"), to_obj_text(mesh_of(*g.orbit)));
  }
  write_report(report ? report : std::optional<std::string>(at("report.json")), to_json(g));
  summarize(g.report);
  return g.report.pass() ? kOk : kVerifyFailed;
}

int run_conjugate(const std::string& in, double tol, const std::string& out) {
  const HoloGrid g = holo_from_net_file(read_net(in));
  NetFile ft = net_file("asymptotic", weierstrass_asymptotic(g, tol));
  ft.normals = gauss_map(g);
  write_net(out, ft);
  return kOk;
}

int run_reflect(const std::string& in, std::optional<int> row, std::optional<int> column, double tol,
                const std::string& out) {
  if (row.has_value() == column.has_value()) fail(Errc::invalid_argument, "give exactly one of --row or --column");
  const Boundary b = row ? Boundary::row(*row) : Boundary::column(*column);
  const NetFile f = read_net(in);
  NetFile result;
  result.kind = f.kind;
  if (f.kind == "asymptotic") {
    const auto e = rotate_extend_asymptotic(f.net, b, tol, f.normals);
    result.net = e.F;
    result.normals = e.N;
  } else {
    if (!f.normals) fail(Errc::invalid_argument, in + " carries no normals; planar reflection needs the Gauss map");
    const auto e = reflect_isothermic(f.net, *f.normals, b, tol, f.labels);
    result.net = e.F;
    result.normals = e.N;
    result.labels = e.labels;
  }
  write_net(out, result);
  return kOk;
}

int run_orbit(const std::string& in, const std::vector<int>& rows, const std::vector<int>& columns, int max_word,
              double tol, const std::string& out, const std::optional<std::string>& obj) {
  const NetFile f = read_net(in);
  std::vector<Boundary> bs;
  for (int r : rows) bs.push_back(Boundary::row(r));
  for (int c : columns) bs.push_back(Boundary::column(c));
  if (bs.empty()) fail(Errc::invalid_argument, "orbit needs at least one --row or --column");
  std::vector<Isometry> gens;
  for (const auto& b : bs) {
    if (f.kind == "asymptotic") {
      const auto a = analyze_boundary_asymptotic(f.net, b, tol);
      if (!a.line) fail(Errc::not_reflectable, to_string(b) + " is not a straight line");
      gens.push_back(Isometry::rotation_180(*a.line));
    } else {
      if (!f.normals) fail(Errc::invalid_argument, in + " carries no normals");
      const auto a = analyze_boundary_isothermic(f.net, *f.normals, b, tol);
      if (!a.plane) fail(Errc::not_reflectable, to_string(b) + " does not carry a symmetry plane");
      gens.push_back(Isometry::reflection(*a.plane));
    }
  }
  OrbitOptions opt;
  opt.max_word = max_word;
  const auto o = build_orbit(f.net, gens, opt);
  write_text(out, orbit_to_json_text(o));
  if (obj) write_text(*obj, to_obj_text(mesh_of(o)));
  std::cerr << "orbit: " << o.elements.size() << " elements, " << o.vertices.size() << " welded vertices, weld residual "
            << o.weld_residual << '\n';
  return kOk;
}

int run_verify(const std::string& in, bool as_isothermic, double tol, const std::optional<std::string>& report) {
  const NetFile f = read_net(in);
  Verification v;
  if (f.kind == "holo") {
    const HoloGrid g = holo_from_net_file(f);
    v.checks.push_back(validate_holomorphic(g, tol));
    if (v.pass()) v = verify_pair(make_minimal_pair(g, tol), tol);
  } else if (f.kind == "asymptotic" && !as_isothermic) {
    v = verify_asymptotic_net(f.net, tol);
    if (f.normals) v.checks.push_back(compare_normals_up_to_sign(tangent_normals(f.net), *f.normals, tol));
  } else {
    v = verify_isothermic_net(f.net, f.labels, f.normals, tol);
  }
  nlohmann::ordered_json j = to_json(v);
  j["input"] = in;
  write_report(report, j);
  summarize(v);
  return v.pass() ? kOk : kVerifyFailed;
}

int run_export(const std::string& in, const std::string& out) {
  const std::string text = read_text(in);
  const QuadMesh m = is_orbit_text(text) ? orbit_mesh_from_json_text(text, in) : mesh_of(from_json_text(text, in).net);
  write_text(out, to_obj_text(m));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete minimal nets: construction, Schwarz reflection and verification"};
  app.require_subcommand(1);
  app.fallthrough();
  double tol = 1e-9;
  std::optional<std::string> report;
  app.add_option("--tol", tol, "Tolerance for all invariant checks")->capture_default_str();
  app.add_option("--report", report, "Write the JSON report here instead of stdout");

  GenerateArgs gen;
  std::string gen_out = "out";
  auto* g = app.add_subcommand("generate", "Build a fundamental piece, its conjugate and Gauss map");
  g->add_option("family", gen.family, "enneper | planar_enneper | knoid | platonic")
      ->required()
      ->check(CLI::IsMember({"enneper", "planar_enneper", "knoid", "platonic"}));
  g->add_option("--k", gen.k, "Order of the Enneper surface or number of k-noid ends")->capture_default_str();
  g->add_option("--size", gen.size, "Grid extent for Enneper families")->check(CLI::Range(2, 100000))->capture_default_str();
  g->add_option("--nmax", gen.n_max, "k-noid: index of the arc row")->capture_default_str();
  g->add_option("--mmax", gen.m_max, "k-noid: last column")->capture_default_str();
  g->add_option("--preset", gen.preset, "Platonic preset")
      ->check(CLI::IsMember({"tetrahedral", "octahedral"}))
      ->capture_default_str();
  g->add_option("--resolution", gen.resolution, "Platonic grid resolution")->capture_default_str();
  g->add_option("--max-iter", gen.max_iter, "Solver iteration limit")->capture_default_str();
  g->add_option("--seed-file", gen.seed_file, "solver.json of an earlier run to start from");
  g->add_flag("--orbit", gen.orbit, "Also assemble the symmetry orbit (orbit.json, orbit.obj)");
  g->add_option("--out", gen_out, "Output directory")->capture_default_str();

  std::string conj_in, conj_out = "F_tilde.dnet.json";
  auto* c = app.add_subcommand("conjugate", "Asymptotic minimal net of a holomorphic grid file");
  c->add_option("input", conj_in, "Holomorphic grid (.dnet.json of kind holo)")->required();
  c->add_option("--out", conj_out)->capture_default_str();

  std::string refl_in, refl_out = "extended.dnet.json";
  std::optional<int> refl_row, refl_col;
  auto* r = app.add_subcommand("reflect", "Schwarz extension across a boundary row or column");
  r->add_option("input", refl_in)->required();
  r->add_option("--row", refl_row);
  r->add_option("--column", refl_col);
  r->add_option("--out", refl_out)->capture_default_str();

  std::string orb_in, orb_out = "orbit.json";
  std::optional<std::string> orb_obj;
  std::vector<int> orb_rows, orb_cols;
  int max_word = 64;
  auto* o = app.add_subcommand("orbit", "Assemble the symmetry orbit generated by boundary symmetries");
  o->add_option("input", orb_in)->required();
  o->add_option("--row", orb_rows, "Boundary rows whose symmetry generates the group");
  o->add_option("--column", orb_cols, "Boundary columns whose symmetry generates the group");
  o->add_option("--max-word", max_word)->capture_default_str();
  o->add_option("--out", orb_out)->capture_default_str();
  o->add_option("--obj", orb_obj, "Also write the welded mesh as OBJ");

  std::string ver_in;
  bool as_iso = false;
  auto* v = app.add_subcommand("verify", "Check every applicable invariant of a net file");
  v->add_option("input", ver_in)->required();
  v->add_flag("--as-isothermic", as_iso, "Treat an asymptotic net as a circular net");

  std::string exp_in, exp_out = "mesh.obj";
  auto* e = app.add_subcommand("export", "Write a net or orbit file as OBJ");
  e->add_option("input", exp_in)->required();
  e->add_option("--out", exp_out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return run_generate(gen, tol, gen_out, report);
    if (*c) return run_conjugate(conj_in, tol, conj_out);
    if (*r) return run_reflect(refl_in, refl_row, refl_col, tol, refl_out);
    if (*o) return run_orbit(orb_in, orb_rows, orb_cols, max_word, tol, orb_out, orb_obj);
    if (*v) return run_verify(ver_in, as_iso, tol, report);
    if (*e) return run_export(exp_in, exp_out);
  } catch (const minnet::Error& err) {
    print_error(std::string(to_string(err.code())), err.message());
    return exit_code_for(err.code());
  } catch (const std::exception& err) {
    print_error("InternalError", err.what());
    return kNumeric;
  }
  return kUsage;
}

#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "minnet/error.hpp"
#include "minnet/lattice.hpp"

namespace minnet {

/// Contents of a .dnet.json file. Holomorphic grids use kind "holo" and store
/// g as points (Re g, Im g, 0) with an extra list of vertices at infinity.
struct NetFile {
  std::string kind{"net"};
  Net3 net;
  std::optional<EdgeLabels> labels;
  std::optional<Net3> normals;
  std::vector<Vertex> infinity;
  std::map<std::string, std::string> links;
};

namespace detail {

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_points(std::ostream& os, const Net3& f) {
  os << "[";
  bool first = true;
  for (const auto& v : f.domain().vertices()) {
    const auto& p = f[v];
    os << (first ? "\n    " : ",\n    ") << "{\"m\": " << v.m << ", \"n\": " << v.n << ", \"p\": [" << fmt17(p.x())
       << ", " << fmt17(p.y()) << ", " << fmt17(p.z()) << "]}";
    first = false;
  }
  os << "\n  ]";
}

inline void write_reals(std::ostream& os, const std::vector<double>& xs) {
  os << "[";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << fmt17(xs[i]);
  os << "]";
}

inline void write_vertex_list(std::ostream& os, const std::vector<Vertex>& vs) {
  os << "[";
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ", " : "") << "[" << vs[i].m << ", " << vs[i].n << "]";
  os << "]";
}

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
  fail(Errc::parse_error, where + ": " + what);
}

inline const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) parse_fail(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

inline int as_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(where, "expected an integer");
  return j.get<int>();
}

inline double as_real(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) parse_fail(where, "expected a number");
  return j.get<double>();
}

inline Vertex as_vertex_pair(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) parse_fail(where, "expected [m, n]");
  return {as_int(j[0], where + "[0]"), as_int(j[1], where + "[1]")};
}

inline Net3 read_points(const nlohmann::json& arr, const LatticeDomain& dom, const std::string& where) {
  if (!arr.is_array()) parse_fail(where, "expected an array");
  Net3 f(dom, Vec3::Constant(std::numeric_limits<double>::quiet_NaN()));
  std::vector<char> seen(dom.slot_count(), 0);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const Vertex v{as_int(field(arr[i], "m", w), w + ".m"), as_int(field(arr[i], "n", w), w + ".n")};
    if (!dom.contains(v)) parse_fail(w, "vertex " + to_string(v) + " is outside the domain or masked");
    if (seen[dom.slot(v)]) parse_fail(w, "duplicate vertex " + to_string(v));
    seen[dom.slot(v)] = 1;
    const auto& p = field(arr[i], "p", w);
    if (!p.is_array() || p.size() != 3) parse_fail(w + ".p", "expected [x, y, z]");
    f[v] = Vec3(as_real(p[0], w + ".p[0]"), as_real(p[1], w + ".p[1]"), as_real(p[2], w + ".p[2]"));
  }
  for (const auto& v : dom.vertices())
    if (!seen[dom.slot(v)]) parse_fail(where, "vertex " + to_string(v) + " of the domain has no entry");
  return f;
}

}  // namespace detail

inline std::string to_json_text(const NetFile& file) {
  const auto& d = file.net.domain();
  std::ostringstream os;
  os << "{\n  \"format\": \"dnet\",\n  \"kind\": \"" << file.kind << "\",\n";
  os << "  \"domain\": {\"m0\": " << d.m_min() << ", \"m1\": " << d.m_max() << ", \"n0\": " << d.n_min()
     << ", \"n1\": " << d.n_max() << ", \"mask\": ";
  detail::write_vertex_list(os, d.mask());
  os << "},\n  \"vertices\": ";
  detail::write_points(os, file.net);
  if (file.labels) {
    os << ",\n  \"alpha_m0\": " << file.labels->m_offset() << ",\n  \"alpha\": ";
    detail::write_reals(os, file.labels->alphas());
    os << ",\n  \"beta_n0\": " << file.labels->n_offset() << ",\n  \"beta\": ";
    detail::write_reals(os, file.labels->betas());
  }
  if (file.normals) {
    os << ",\n  \"normals\": ";
    detail::write_points(os, *file.normals);
  }
  if (!file.infinity.empty()) {
    os << ",\n  \"infinity\": ";
    detail::write_vertex_list(os, file.infinity);
  }
  if (!file.links.empty()) {
    os << ",\n  \"links\": {";
    bool first = true;
    for (const auto& [k, v] : file.links) {
      os << (first ? "" : ", ") << nlohmann::json(k).dump() << ": " << nlohmann::json(v).dump();
      first = false;
    }
    os << "}";
  }
  os << "\n}\n";
  return os.str();
}

inline NetFile from_json_text(const std::string& text, const std::string& source = "<input>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::parse_fail(source, std::string("malformed JSON (") + e.what() + ")");
  }
  using detail::as_int;
  using detail::field;
  NetFile out;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) detail::parse_fail(source + ".kind", "expected a string");
    out.kind = j["kind"].get<std::string>();
  }
  const auto& dj = field(j, "domain", source);
  const std::string dw = source + ".domain";
  std::vector<Vertex> mask;
  if (dj.contains("mask")) {
    const auto& mj = dj["mask"];
    if (!mj.is_array()) detail::parse_fail(dw + ".mask", "expected an array");
    for (std::size_t i = 0; i < mj.size(); ++i)
      mask.push_back(detail::as_vertex_pair(mj[i], dw + ".mask[" + std::to_string(i) + "]"));
  }
  LatticeDomain dom;
  try {
    dom = LatticeDomain(as_int(field(dj, "m0", dw), dw + ".m0"), as_int(field(dj, "m1", dw), dw + ".m1"),
                        as_int(field(dj, "n0", dw), dw + ".n0"), as_int(field(dj, "n1", dw), dw + ".n1"), mask);
  } catch (const Error& e) {
    if (e.code() == Errc::parse_error) throw;
    detail::parse_fail(dw, e.what());
  }
  out.net = detail::read_points(field(j, "vertices", source), dom, source + ".vertices");
  if (j.contains("alpha") || j.contains("beta")) {
    auto reals = [&](const char* key) {
      std::vector<double> xs;
      const auto& a = field(j, key, source);
      if (!a.is_array()) detail::parse_fail(source + "." + key, "expected an array");
      for (std::size_t i = 0; i < a.size(); ++i)
        xs.push_back(detail::as_real(a[i], source + "." + key + "[" + std::to_string(i) + "]"));
      return xs;
    };
    const int am0 = j.contains("alpha_m0") ? as_int(j["alpha_m0"], source + ".alpha_m0") : dom.m_min();
    const int bn0 = j.contains("beta_n0") ? as_int(j["beta_n0"], source + ".beta_n0") : dom.n_min();
    out.labels = EdgeLabels(am0, reals("alpha"), bn0, reals("beta"));
    if (am0 > dom.m_min() || am0 + static_cast<int>(out.labels->alphas().size()) < dom.m_max() ||
        bn0 > dom.n_min() || bn0 + static_cast<int>(out.labels->betas().size()) < dom.n_max())
      detail::parse_fail(source + ".alpha", "edge labels do not cover the domain");
  }
  if (j.contains("normals")) out.normals = detail::read_points(j["normals"], dom, source + ".normals");
  if (j.contains("infinity")) {
    const auto& ij = j["infinity"];
    if (!ij.is_array()) detail::parse_fail(source + ".infinity", "expected an array");
    for (std::size_t i = 0; i < ij.size(); ++i) {
      const auto v = detail::as_vertex_pair(ij[i], source + ".infinity[" + std::to_string(i) + "]");
      if (!dom.contains(v)) detail::parse_fail(source + ".infinity", "vertex " + to_string(v) + " not in domain");
      out.infinity.push_back(v);
    }
  }
  if (j.contains("links")) {
    if (!j["links"].is_object()) detail::parse_fail(source + ".links", "expected an object");
    for (const auto& [k, v] : j["links"].items()) {
      if (!v.is_string()) detail::parse_fail(source + ".links." + k, "expected a string");
      out.links[k] = v.get<std::string>();
    }
  }
  return out;
}

inline void write_net(const std::string& path, const NetFile& file) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(Errc::invalid_argument, "cannot open " + path + " for writing");
  os << to_json_text(file);
  if (!os) fail(Errc::invalid_argument, "write to " + path + " failed");
}

inline std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(Errc::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline NetFile read_net(const std::string& path) { return from_json_text(read_text(path), path); }

}  // namespace minnet

#pragma once

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "minnet/error.hpp"
#include "minnet/net_io.hpp"
#include "minnet/orbit.hpp"

namespace minnet {

/// A welded quad mesh, the common currency of OBJ export.
struct QuadMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::size_t, 4>> faces;  ///< 0-based
};

inline QuadMesh mesh_of(const Net3& f) {
  QuadMesh m;
  const auto& d = f.domain();
  std::vector<std::size_t> index(d.slot_count(), 0);
  for (const auto& v : d.vertices()) {
    index[d.slot(v)] = m.vertices.size();
    m.vertices.push_back(f[v]);
  }
  for (const auto& q : d.quads()) {
    const auto c = quad_vertices(q);
    m.faces.push_back({index[d.slot(c[0])], index[d.slot(c[1])], index[d.slot(c[2])], index[d.slot(c[3])]});
  }
  return m;
}

inline QuadMesh mesh_of(const SymmetryOrbit& o) { return {o.vertices, o.faces}; }

inline std::string to_obj_text(const QuadMesh& m) {
  std::ostringstream os;
  for (const auto& p : m.vertices)
    os << "v " << detail::fmt17(p.x()) << ' ' << detail::fmt17(p.y()) << ' ' << detail::fmt17(p.z()) << '\n';
  for (const auto& f : m.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1 << '\n';
  return os.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(Errc::invalid_argument, "cannot open " + path + " for writing");
  os << text;
  if (!os) fail(Errc::invalid_argument, "write to " + path + " failed");
}

/// Orbit file: the piece in net format, the group elements, and the welded mesh.
inline std::string orbit_to_json_text(const SymmetryOrbit& o) {
  using detail::fmt17;
  std::ostringstream os;
  NetFile piece;
  piece.kind = "isothermic";
  piece.net = o.piece;
  std::string piece_text = to_json_text(piece);
  while (!piece_text.empty() && piece_text.back() == '\n') piece_text.pop_back();
  os << "{\n\"format\": \"dnet-orbit\",\n\"weld_residual\": " << fmt17(o.weld_residual) << ",\n\"piece\": " << piece_text
     << ",\n\"elements\": [";
  for (std::size_t e = 0; e < o.elements.size(); ++e) {
    const auto& g = o.elements[e];
    os << (e ? ",\n  " : "\n  ") << "{\"linear\": [";
    for (int i = 0; i < 9; ++i) os << (i ? ", " : "") << fmt17(g.linear(i / 3, i % 3));
    os << "], \"translation\": [" << fmt17(g.translation.x()) << ", " << fmt17(g.translation.y()) << ", "
       << fmt17(g.translation.z()) << "]}";
  }
  os << "\n],\n\"vertices\": [";
  for (std::size_t i = 0; i < o.vertices.size(); ++i) {
    const auto& p = o.vertices[i];
    os << (i ? ",\n  " : "\n  ") << "[" << fmt17(p.x()) << ", " << fmt17(p.y()) << ", " << fmt17(p.z()) << "]";
  }
  os << "\n],\n\"faces\": [";
  for (std::size_t i = 0; i < o.faces.size(); ++i) {
    const auto& f = o.faces[i];
    os << (i ? ",\n  " : "\n  ") << "[" << f[0] << ", " << f[1] << ", " << f[2] << ", " << f[3] << "]";
  }
  os << "\n]\n}\n";
  return os.str();
}

/// Reads the welded mesh of an orbit file.
inline QuadMesh orbit_mesh_from_json_text(const std::string& text, const std::string& source = "<input>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    detail::parse_fail(source, std::string("malformed JSON (") + e.what() + ")");
  }
  QuadMesh m;
  const auto& vs = detail::field(j, "vertices", source);
  const auto& fs = detail::field(j, "faces", source);
  if (!vs.is_array() || !fs.is_array()) detail::parse_fail(source, "vertices and faces must be arrays");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string w = source + ".vertices[" + std::to_string(i) + "]";
    if (!vs[i].is_array() || vs[i].size() != 3) detail::parse_fail(w, "expected [x, y, z]");
    m.vertices.emplace_back(detail::as_real(vs[i][0], w), detail::as_real(vs[i][1], w), detail::as_real(vs[i][2], w));
  }
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string w = source + ".faces[" + std::to_string(i) + "]";
    if (!fs[i].is_array() || fs[i].size() != 4) detail::parse_fail(w, "expected four vertex indices");
    std::array<std::size_t, 4> f{};
    for (int k = 0; k < 4; ++k) {
      const int idx = detail::as_int(fs[i][static_cast<std::size_t>(k)], w);
      if (idx < 0 || static_cast<std::size_t>(idx) >= m.vertices.size()) detail::parse_fail(w, "vertex index out of range");
      f[static_cast<std::size_t>(k)] = static_cast<std::size_t>(idx);
    }
    m.faces.push_back(f);
  }
  return m;
}

/// True if the text is an orbit file rather than a single net.
inline bool is_orbit_text(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    return j.is_object() && j.value("format", "") == "dnet-orbit";
  } catch (const nlohmann::json::parse_error&) {
    return false;
  }
}

}  // namespace minnet

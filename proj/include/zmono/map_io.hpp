#pragma once

// Map files.  A map is a JSON object with an integer "flags", the three
// involutions "s0","s1","s2" as arrays of 0-based flag indices, and an
// optional "marks" object naming flags.  The writer is canonical: the same
// map always serializes to the same bytes, one line per involution, marks
// in name order.  The loader enforces every map axiom, so a file that loads
// is a closed connected surface map.
//
// A file may also carry a "construction" object: the exact plane drawing of
// the chord arrangement a sphere realization came from (points as rational
// strings).  It is documentation payload for the SVG exporter and has no
// effect on the map itself.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zmono/chord.hpp"
#include "zmono/core.hpp"
#include "zmono/planar.hpp"

namespace zmono {

/// Self-contained drawing of a chord-matching construction: the slot ring
/// with its labels, positions for the assembled graph's vertices, a polyline
/// and kind per edge, and the filled polygons of the black faces.
struct ConstructionDrawing {
  int k = 0;
  std::vector<std::pair<std::string, ExactPoint>> slots;  // ring order
  std::vector<ExactPoint> vertices;
  std::vector<std::vector<ExactPoint>> edge_path;
  std::vector<std::string> edge_kind;
  std::vector<std::vector<ExactPoint>> black_faces;
};

/// Drawing payload of a finished plane assembly.  Face polygons are stitched
/// here, while the build still knows its topology.
inline ConstructionDrawing drawingOf(const PlanarBuild& b) {
  ConstructionDrawing d;
  d.k = b.k;
  for (int s = 0; s < 2 * b.k; ++s)
    d.slots.emplace_back(slotLabel(b.k, s), b.arrangement.slot_point[s]);
  d.vertices = b.vertex_point;
  d.edge_path = b.edge_path;
  d.edge_kind = b.edge_kind;

  const Cells c = cells(b.g);
  for (std::uint32_t face = 0; face < c.faceCount(); ++face) {
    if (b.colors[face] != b.black) continue;
    std::vector<ExactPoint> poly;
    const Flag start = c.face_rep[face];
    Flag f = start;
    do {
      const ExactPoint& from = d.vertices[c.vertex_of[f]];
      std::vector<ExactPoint> path = d.edge_path[c.edge_of[f]];
      if (!(path.front() == from)) std::reverse(path.begin(), path.end());
      if (!(path.front() == from))
        throw Error(Err::InternalDegeneracy,
                    "edge path endpoints disagree with the face walk");
      poly.insert(poly.end(), path.begin(), path.end() - 1);
      f = b.g.s1(b.g.s0(f));
    } while (f != start);
    d.black_faces.push_back(std::move(poly));
  }
  return d;
}

namespace detail {

inline std::string rationalText(const mpq_class& q) { return q.get_str(); }

inline mpq_class rationalOf(const std::string& text) {
  if (text.empty() ||
      text.find_first_not_of("0123456789-/") != std::string::npos)
    throw Error(Err::IoError, "bad rational '" + text + "'");
  try {
    mpq_class q(text);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(Err::IoError, "bad rational '" + text + "'");
  }
}

inline void writePoint(std::ostream& os, const ExactPoint& p) {
  os << "[\"" << rationalText(p.x) << "\",\"" << rationalText(p.y) << "\"]";
}

inline void writePath(std::ostream& os, const std::vector<ExactPoint>& path) {
  os << '[';
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) os << ',';
    writePoint(os, path[i]);
  }
  os << ']';
}

inline ExactPoint readPoint(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw Error(Err::IoError, "construction point is not a pair of rationals");
  return ExactPoint{rationalOf(j[0].get<std::string>()),
                    rationalOf(j[1].get<std::string>())};
}

inline std::vector<ExactPoint> readPath(const nlohmann::json& j) {
  if (!j.is_array())
    throw Error(Err::IoError, "construction path is not an array");
  std::vector<ExactPoint> path;
  for (const auto& p : j) path.push_back(readPoint(p));
  return path;
}

}  // namespace detail

/// Canonical JSON text of a map, optionally with a construction drawing.
inline std::string saveMap(const FlagMap& m,
                           const ConstructionDrawing* drawing = nullptr) {
  std::ostringstream os;
  os << "{\n  \"flags\": " << m.flagCount() << ",\n  \"marks\": {";
  bool first = true;
  for (const auto& [name, f] : m.marks()) {
    os << (first ? "" : ", ") << nlohmann::json(name).dump() << ": " << f;
    first = false;
  }
  os << "},\n";
  for (int i = 0; i < 3; ++i) {
    os << "  \"s" << i << "\": [";
    for (Flag f = 0; f < m.flagCount(); ++f)
      os << (f ? "," : "") << m.s(i, f);
    os << "]" << (i < 2 || drawing ? "," : "") << "\n";
  }
  if (drawing) {
    os << "  \"construction\": {\"k\": " << drawing->k << ", \"slots\": [";
    for (std::size_t s = 0; s < drawing->slots.size(); ++s) {
      if (s) os << ',';
      os << "[" << nlohmann::json(drawing->slots[s].first).dump() << ",\""
         << detail::rationalText(drawing->slots[s].second.x) << "\",\""
         << detail::rationalText(drawing->slots[s].second.y) << "\"]";
    }
    os << "], \"vertices\": [";
    for (std::size_t v = 0; v < drawing->vertices.size(); ++v) {
      if (v) os << ',';
      detail::writePoint(os, drawing->vertices[v]);
    }
    os << "], \"edges\": [";
    for (std::size_t e = 0; e < drawing->edge_path.size(); ++e) {
      if (e) os << ',';
      os << "[" << nlohmann::json(drawing->edge_kind[e]).dump() << ",";
      detail::writePath(os, drawing->edge_path[e]);
      os << "]";
    }
    os << "], \"black_faces\": [";
    for (std::size_t p = 0; p < drawing->black_faces.size(); ++p) {
      if (p) os << ',';
      detail::writePath(os, drawing->black_faces[p]);
    }
    os << "]}\n";
  }
  os << "}\n";
  return os.str();
}

struct LoadedMap {
  FlagMap map;
  bool has_construction = false;
  ConstructionDrawing construction;
};

/// Parse a map file.  Throws IoError for malformed JSON or schema breaks and
/// the map axioms' own errors for structurally invalid maps.
inline LoadedMap loadMap(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Err::IoError, std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("flags") ||
      !j["flags"].is_number_unsigned())
    throw Error(Err::IoError, "map file needs an unsigned integer 'flags'");
  const Flag n = j["flags"].get<Flag>();

  auto involution = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != n)
      throw Error(Err::IoError, std::string("map file needs a '") + key +
                                    "' array of length " + std::to_string(n));
    std::vector<Flag> out;
    out.reserve(n);
    for (const auto& v : j[key]) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= n)
        throw Error(Err::IoError,
                    std::string("'") + key + "' entries must be flag indices");
      out.push_back(v.get<Flag>());
    }
    return out;
  };
  std::vector<Flag> s0 = involution("s0");
  std::vector<Flag> s1 = involution("s1");
  std::vector<Flag> s2 = involution("s2");

  std::map<std::string, Flag> marks;
  if (j.contains("marks")) {
    if (!j["marks"].is_object())
      throw Error(Err::IoError, "'marks' must be an object");
    for (const auto& [name, v] : j["marks"].items()) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= n)
        throw Error(Err::IoError, "mark '" + name + "' must be a flag index");
      marks[name] = v.get<Flag>();
    }
  }

  LoadedMap out{FlagMap(n, std::move(s0), std::move(s1), std::move(s2),
                        std::move(marks)),
                false,
                {}};

  if (j.contains("construction")) {
    const nlohmann::json& c = j["construction"];
    if (!c.is_object() || !c.contains("k") || !c["k"].is_number_unsigned() ||
        !c.contains("slots") || !c["slots"].is_array() ||
        !c.contains("vertices") || !c["vertices"].is_array() ||
        !c.contains("edges") || !c["edges"].is_array() ||
        !c.contains("black_faces") || !c["black_faces"].is_array())
      throw Error(Err::IoError, "malformed 'construction' object");
    ConstructionDrawing d;
    d.k = c["k"].get<int>();
    for (const auto& s : c["slots"]) {
      if (!s.is_array() || s.size() != 3 || !s[0].is_string() ||
          !s[1].is_string() || !s[2].is_string())
        throw Error(Err::IoError, "construction slot is not [label, x, y]");
      d.slots.emplace_back(s[0].get<std::string>(),
                           ExactPoint{detail::rationalOf(s[1].get<std::string>()),
                                      detail::rationalOf(s[2].get<std::string>())});
    }
    for (const auto& v : c["vertices"]) d.vertices.push_back(detail::readPoint(v));
    for (const auto& e : c["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string())
        throw Error(Err::IoError, "construction edge is not [kind, path]");
      d.edge_kind.push_back(e[0].get<std::string>());
      d.edge_path.push_back(detail::readPath(e[1]));
    }
    for (const auto& p : c["black_faces"])
      d.black_faces.push_back(detail::readPath(p));
    out.has_construction = true;
    out.construction = std::move(d);
  }
  return out;
}

inline std::string readTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Err::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void writeTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(Err::IoError, "cannot open '" + path + "' for writing");
  out << text;
  if (!out)
    throw Error(Err::IoError, "failed writing '" + path + "'");
}

}  // namespace zmono

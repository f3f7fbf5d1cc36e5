#pragma once

// Export-only views of maps: DOT for the abstract graph and SVG for plane
// constructions that carry exact drawing data.  Neither format round-trips;
// the JSON format in map_io.hpp is the persistent one.

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "zmono/core.hpp"
#include "zmono/map_io.hpp"

namespace zmono {

/// Undirected DOT graph: one node per vertex, one line per edge, and every
/// mark annotated on both the vertex and the edge of its flag.
inline std::string exportDot(const FlagMap& m) {
  const Cells c = cells(m);
  std::vector<std::string> vertex_notes(c.vertexCount());
  std::vector<std::string> edge_notes(c.edgeCount());
  for (const auto& [name, f] : m.marks()) {
    auto& vn = vertex_notes[c.vertex_of[f]];
    vn += (vn.empty() ? "" : ",") + name;
    auto& en = edge_notes[c.edge_of[f]];
    en += (en.empty() ? "" : ",") + name;
  }

  std::ostringstream os;
  os << "graph map {\n";
  os << "  // " << c.vertexCount() << " vertices, " << c.edgeCount()
     << " edges\n";
  for (std::uint32_t v = 0; v < c.vertexCount(); ++v) {
    os << "  v" << v << " [label=\"v" << v;
    if (!vertex_notes[v].empty()) os << " (" << vertex_notes[v] << ")";
    os << "\"];\n";
  }
  for (std::uint32_t e = 0; e < c.edgeCount(); ++e) {
    const Flag r = c.edge_rep[e];
    os << "  v" << c.vertex_of[r] << " -- v" << c.vertex_of[m.s0(r)]
       << " [label=\"e" << e;
    if (!edge_notes[e].empty()) os << " (" << edge_notes[e] << ")";
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

namespace detail {

// SVG y grows downward; the drawing uses mathematical orientation, so y is
// negated at emission and the picture appears exactly as constructed.
inline std::string svgNum(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  std::string s = os.str();
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

inline std::string svgXY(const ExactPoint& p) {
  return svgNum(p.x.get_d()) + " " + svgNum(-p.y.get_d());
}

}  // namespace detail

/// SVG of a plane construction: the three reference circles (slot ring C,
/// hub ring C', polygon ring C''), the black faces filled, every edge as a
/// polyline, and labels for the polygon corners p_i, the hubs a_ij, and the
/// slots l_i/r_i.  Throws NoGeometry when the drawing is empty.
inline std::string exportSvg(const ConstructionDrawing& d) {
  if (d.k < 3 || d.vertices.empty() || d.edge_path.empty())
    throw Error(Err::NoGeometry, "map carries no construction drawing");

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-3.8 -3.8 7.6 "
        "7.6\" width=\"760\" height=\"760\">\n";
  os << "  <rect x=\"-3.8\" y=\"-3.8\" width=\"7.6\" height=\"7.6\" "
        "fill=\"white\"/>\n";
  for (const char* r : {"1", "2", "3"})
    os << "  <circle cx=\"0\" cy=\"0\" r=\"" << r
       << "\" fill=\"none\" stroke=\"#b9b9b9\" stroke-width=\"0.015\" "
          "stroke-dasharray=\"0.07 0.07\"/>\n";

  for (const auto& poly : d.black_faces) {
    os << "  <path d=\"";
    for (std::size_t i = 0; i < poly.size(); ++i)
      os << (i ? " L " : "M ") << detail::svgXY(poly[i]);
    os << " Z\" fill=\"#c9c9c9\" stroke=\"none\"/>\n";
  }

  for (std::size_t e = 0; e < d.edge_path.size(); ++e) {
    os << "  <polyline points=\"";
    for (std::size_t i = 0; i < d.edge_path[e].size(); ++i)
      os << (i ? " " : "") << detail::svgXY(d.edge_path[e][i]);
    os << "\" fill=\"none\" stroke=\""
       << (d.edge_kind[e] == "chord" ? "#205080" : "#202020")
       << "\" stroke-width=\"0.03\"/>\n";
  }

  for (const auto& p : d.vertices)
    os << "  <circle cx=\"" << detail::svgNum(p.x.get_d()) << "\" cy=\""
       << detail::svgNum(-p.y.get_d())
       << "\" r=\"0.045\" fill=\"#202020\"/>\n";

  const auto label = [&os](const std::string& text, const ExactPoint& at,
                           double scale) {
    const double x = at.x.get_d() * scale, y = at.y.get_d() * scale;
    os << "  <text x=\"" << detail::svgNum(x) << "\" y=\""
       << detail::svgNum(-y + 0.07)
       << "\" font-size=\"0.2\" font-family=\"sans-serif\" "
          "text-anchor=\"middle\">"
       << text << "</text>\n";
  };
  for (const auto& [name, at] : d.slots) label(name, at, 1.18);
  for (int i = 1; i <= d.k; ++i) {
    label("p" + std::to_string(i), d.vertices[static_cast<std::size_t>(i - 1)],
          1.09);
    label("a" + std::to_string(i) + std::to_string(i % d.k + 1),
          d.vertices[static_cast<std::size_t>(d.k + i - 1)], 1.14);
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace zmono

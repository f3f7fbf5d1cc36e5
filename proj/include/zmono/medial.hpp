#pragma once

// Medial maps, chess colorings of 4-regular maps, radial extraction, and
// central circuits.  The medial M of a map puts a vertex on every edge and
// joins consecutive edges around each corner; its faces split into two
// classes, one per original face and one per original vertex, and that
// split is a chess coloring (adjacent faces always differ).  Extracting the
// radial of either color class inverts the construction: the black radial of
// M(G) is G itself, flag for flag, and the white radial is its dual.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "zmono/core.hpp"
#include "zmono/rotation.hpp"

namespace zmono {

/// Medial map on flags 2f+t.  Faces with t = 0 correspond to faces of m,
/// faces with t = 1 to vertices of m.
inline FlagMap medial(const FlagMap& m) {
  const std::uint32_t n = 2 * m.flagCount();
  std::vector<Flag> s0(n), s1(n), s2(n);
  for (Flag f = 0; f < m.flagCount(); ++f) {
    for (Flag t : {0u, 1u}) {
      s0[2 * f + t] = 2 * m.s1(f) + t;
      s2[2 * f + t] = 2 * f + (1 - t);
    }
    s1[2 * f] = 2 * m.s0(f);
    s1[2 * f + 1] = 2 * m.s2(f) + 1;
  }
  return FlagMap(n, s0, s1, s2);
}

/// Two-coloring of the faces of a 4-regular map such that faces sharing an
/// edge differ.  The face of flag 0 gets color 0.  Throws NotFourRegular if
/// some vertex degree differs from 4 and DualNotBipartite if no such
/// coloring exists.
inline std::vector<signed char> chessColoring(const FlagMap& m) {
  const Cells c = cells(m);
  std::vector<std::uint32_t> vertex_flags(c.vertexCount(), 0);
  for (Flag f = 0; f < m.flagCount(); ++f) vertex_flags[c.vertex_of[f]]++;
  for (std::uint32_t v = 0; v < c.vertexCount(); ++v)
    if (vertex_flags[v] != 8)
      throw Error(Err::NotFourRegular,
                  "vertex " + std::to_string(v) + " has degree " +
                  std::to_string(vertex_flags[v] / 2), v);

  std::vector<std::vector<Flag>> face_flags(c.faceCount());
  for (Flag f = 0; f < m.flagCount(); ++f) face_flags[c.face_of[f]].push_back(f);

  std::vector<signed char> color(c.faceCount(), -1);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t seed = 0; seed < c.faceCount(); ++seed) {
    if (color[seed] != -1) continue;
    color[seed] = 0;
    queue.assign(1, seed);
    while (!queue.empty()) {
      const std::uint32_t fid = queue.back();
      queue.pop_back();
      for (Flag f : face_flags[fid]) {
        const std::uint32_t other = c.face_of[m.s2(f)];
        if (color[other] == -1) {
          color[other] = static_cast<signed char>(1 - color[fid]);
          queue.push_back(other);
        } else if (color[other] == color[fid]) {
          throw Error(Err::DualNotBipartite,
                      "faces " + std::to_string(fid) + " and " + std::to_string(other) +
                      " share an edge but would need the same color", fid, other);
        }
      }
    }
  }
  return color;
}

/// Radial map of one color class: the flags of that class, reconnected so
/// that the chosen faces become the radial's faces and the map's vertices
/// sit where edges crossed the class boundary.  from_host maps host flags to
/// radial flags (kNoFlag off-class), to_host inverts it.
struct RadialMap {
  FlagMap map;
  std::vector<Flag> from_host;
  std::vector<Flag> to_host;
};

inline RadialMap extractRadial(const FlagMap& g, const std::vector<signed char>& colors,
                               int side) {
  const Cells c = cells(g);
  std::vector<Flag> from_host(g.flagCount(), kNoFlag);
  std::vector<Flag> to_host;
  for (Flag f = 0; f < g.flagCount(); ++f)
    if (colors[c.face_of[f]] == side) {
      from_host[f] = static_cast<Flag>(to_host.size());
      to_host.push_back(f);
    }
  if (to_host.empty())
    throw Error(Err::InternalDegeneracy, "no faces carry the requested color", side);

  const std::uint32_t n = static_cast<std::uint32_t>(to_host.size());
  std::vector<Flag> s0(n), s1(n), s2(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const Flag f = to_host[i];
    s0[i] = from_host[g.s2(g.s1(g.s2(f)))];
    s1[i] = from_host[g.s0(f)];
    s2[i] = from_host[g.s1(f)];
  }
  return RadialMap{FlagMap(n, s0, s1, s2), std::move(from_host), std::move(to_host)};
}

/// A central circuit of a 4-regular map: the closed walk that continues
/// straight through every vertex it meets.  The walk leaves vertices[i]
/// along edges[i] and arrives at vertices[i+1], cyclically.
struct CentralCircuit {
  std::vector<std::uint32_t> vertices;
  std::vector<std::uint32_t> edges;
};

/// All central circuits, one per undirected walk, in order of their smallest
/// dart.  Orientable maps only.
inline std::vector<CentralCircuit> centralCircuits(const FlagMap& g) {
  const HostedMap h = fromFlagMap(g);
  const RotationSystem& rs = h.rs;
  for (std::uint32_t v = 0; v < rs.vertexCount(); ++v)
    if (rs.vertexDarts(v).size() != 4)
      throw Error(Err::NotFourRegular,
                  "vertex " + std::to_string(v) + " has degree " +
                  std::to_string(rs.vertexDarts(v).size()), v);

  // dart -> straight-ahead continuation: the opposite dart at the head
  const auto next = [&rs](Dart d) {
    return rs.rho(rs.rho(RotationSystem::twin(d)));
  };
  std::vector<char> used(rs.dartLimit(), 0);
  std::vector<CentralCircuit> out;
  for (Dart start = 0; start < rs.dartLimit(); ++start) {
    if (used[start]) continue;
    CentralCircuit cc;
    Dart d = start;
    do {
      used[d] = 1;
      used[RotationSystem::twin(d)] = 1;  // the reversed walk is the same circuit
      cc.vertices.push_back(rs.origin(d));
      cc.edges.push_back(d / 2);
      d = next(d);
    } while (d != start && !used[d]);
    if (d != start)
      throw Error(Err::InternalDegeneracy, "straight-ahead walk failed to close");
    out.push_back(std::move(cc));
  }
  return out;
}

}  // namespace zmono

#pragma once

// Detection of the local defects that block zigzag analysis.  Five kinds are
// reported per side: loop edges (split into loops that bound a face and loops
// that do not), parallel edge classes, edges lying on a single face, and
// pairs of distinct faces sharing two or more edges.  The last two are the
// first three seen from the dual, so one defect generally shows up twice:
// once from the primal scan and once from the scan of the dual map.  A map
// with no defects on either side is called spherically simple (SS) below and
// in the z-monodromy code: both the map and its dual are loopless simple
// graphs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "zmono/core.hpp"

namespace zmono {

enum class ViolationKind {
  LoopFace,       // loop edge that bounds a face
  LoopNonFace,    // loop edge that does not bound a face
  ParallelEdges,  // >= 2 edges joining the same two vertices
  OneFaceEdge,    // edge with the same face on both sides
  FacePairMulti,  // two distinct faces sharing >= 2 edges
};

inline const char* violationName(ViolationKind k) {
  switch (k) {
    case ViolationKind::LoopFace: return "loop-face";
    case ViolationKind::LoopNonFace: return "loop";
    case ViolationKind::ParallelEdges: return "parallel";
    case ViolationKind::OneFaceEdge: return "one-face";
    case ViolationKind::FacePairMulti: return "face-pair";
  }
  return "?";
}

struct Violation {
  bool on_dual = false;
  ViolationKind kind = ViolationKind::LoopFace;
  std::uint32_t site = 0;                // edge id; the smallest of `edges`
  std::vector<std::uint32_t> edges;      // all edges involved, ascending
};

namespace detail {

inline void scanSide(const FlagMap& m, bool on_dual, std::vector<Violation>& out) {
  const Cells c = cells(m);
  std::vector<std::uint32_t> face_size(c.faceCount(), 0);
  for (Flag f = 0; f < m.flagCount(); ++f) face_size[c.face_of[f]]++;

  const auto push = [&](std::vector<Violation>& bucket, ViolationKind kind,
                        std::vector<std::uint32_t> edges) {
    Violation viol;
    viol.on_dual = on_dual;
    viol.kind = kind;
    viol.site = edges.front();
    viol.edges = std::move(edges);
    bucket.push_back(std::move(viol));
  };

  std::vector<Violation> loops_face, loops_free, parallels, one_face, face_pairs;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> by_ends;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> by_sides;
  for (std::uint32_t e = 0; e < c.edgeCount(); ++e) {
    const Flag f = c.edge_rep[e];
    const std::uint32_t u = c.vertex_of[f];
    const std::uint32_t v = c.vertex_of[m.s0(f)];
    if (u == v) {
      const bool bounds = face_size[c.face_of[f]] == 2 || face_size[c.face_of[m.s2(f)]] == 2;
      push(bounds ? loops_face : loops_free,
           bounds ? ViolationKind::LoopFace : ViolationKind::LoopNonFace, {e});
    } else {
      by_ends[std::minmax(u, v)].push_back(e);
    }
    const std::uint32_t g = c.face_of[f];
    const std::uint32_t h = c.face_of[m.s2(f)];
    if (g == h)
      push(one_face, ViolationKind::OneFaceEdge, {e});
    else
      by_sides[std::minmax(g, h)].push_back(e);
  }
  for (auto& [ends, members] : by_ends) {
    (void)ends;
    if (members.size() >= 2)
      push(parallels, ViolationKind::ParallelEdges, std::move(members));
  }
  for (auto& [sides, members] : by_sides) {
    (void)sides;
    if (members.size() >= 2)
      push(face_pairs, ViolationKind::FacePairMulti, std::move(members));
  }
  const auto by_site = [](const Violation& a, const Violation& b) { return a.site < b.site; };
  std::sort(parallels.begin(), parallels.end(), by_site);
  std::sort(face_pairs.begin(), face_pairs.end(), by_site);
  for (auto* bucket : {&loops_face, &loops_free, &parallels, &one_face, &face_pairs})
    for (auto& v : *bucket) out.push_back(std::move(v));
}

}  // namespace detail

/// All defects, primal side first, each side ordered loop-face, loop,
/// parallel-class, one-face edge, face-pair, by the smallest edge id
/// involved.  Dual-side entries use primal edge ids (the dual shares them).
inline std::vector<Violation> findViolations(const FlagMap& m) {
  std::vector<Violation> out;
  detail::scanSide(m, false, out);
  detail::scanSide(dual(m), true, out);
  return out;
}

inline bool satisfiesSS(const FlagMap& m) { return findViolations(m).empty(); }

inline void requireSS(const FlagMap& m, const char* op) {
  if (!satisfiesSS(m))
    throw Error(Err::SSViolated, std::string(op) +
                " needs a map that is simple on both sides (no loops or "
                "parallel edges in it or its dual)");
}

}  // namespace zmono

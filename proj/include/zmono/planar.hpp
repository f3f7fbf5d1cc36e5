#pragma once

// Assembly of the 4-regular plane graph behind a sphere realization.  The
// target face is the outer k-gon p_1..p_k; each polygon corner gap holds a
// hub a_(i,i+1) joined by spokes to p_i and p_(i+1) and carrying two chord
// ends on the inner circle.  Chords cross inside the inner circle; every
// crossing becomes a degree-4 vertex.  The black radial of this graph is the
// map whose framed face realizes the requested permutation.

#include <array>
#include <string>
#include <vector>

#include "zmono/chord.hpp"
#include "zmono/core.hpp"
#include "zmono/medial.hpp"
#include "zmono/monodromy.hpp"
#include "zmono/rotation.hpp"
#include "zmono/simplify.hpp"

namespace zmono {

namespace detail {

inline ExactPoint scalePoint(const ExactPoint& p, const mpq_class& s) {
  ExactPoint q;
  q.x = p.x * s;
  q.y = p.y * s;
  return q;
}

}  // namespace detail

struct PlanarBuild {
  int k = 0;
  ChordMatching matching;
  ChordArrangement arrangement;
  std::vector<std::vector<int>> curves;
  FlagMap g;                         // the 4-regular plane map
  std::vector<Dart> arc_darts;       // arc_darts[i] = dart p_(i+1) -> p_(i+2)
  std::vector<signed char> colors;   // chess colors of g's faces
  signed char black = 0;             // color of the corner triangles
  // drawing data, exact: vertex positions (p_1..p_k, a_12..a_k1, crossings)
  // and a polyline per edge of g
  std::vector<ExactPoint> vertex_point;
  std::vector<std::vector<ExactPoint>> edge_path;   // indexed by edge id
  std::vector<std::string> edge_kind;               // "arc" | "spoke" | "chord"

  Dart dart12() const { return arc_darts[0]; }
};

/// Build the 4-regular plane graph for an admissible permutation.  Vertex
/// ids: p_i = i-1, a_(i,i+1) = k+i-1, crossing x = 2k+x (discovery order).
/// Rotations are counterclockwise in a drawing whose slots run clockwise on
/// the unit circle; the outer face (left of p_1 -> p_2) is white and every
/// corner triangle p_i, a_(i,i+1), p_(i+1) is black.
inline PlanarBuild assembleQuadMap(const ZPerm& sigma) {
  const int k = sigma.k;
  if (k < 3)
    throw Error(Err::InternalDegeneracy, "plane construction needs a face of length 3 or more",
                k);
  ChordMatching matching = matchingFromSigma(sigma);
  ChordArrangement arr = arrangeChords(matching);
  std::vector<std::vector<int>> curves = closedCurves(matching);
  const int cn = static_cast<int>(arr.crossings.size());

  RotationSystem rs;
  for (int i = 0; i < 2 * k + cn; ++i) rs.addVertex();
  const auto pid = [&](int i) {  // p_i for any integer i
    return static_cast<std::uint32_t>((i - 1 + k) % k);
  };
  const auto aidOfIndex = [&](int i) {  // a_(i,i+1)
    return static_cast<std::uint32_t>(k + (i - 1 + k) % k);
  };
  const auto aidOfSlot = [&](int s) {
    return static_cast<std::uint32_t>(k + (s / 2 + k - 1) % k);
  };

  std::vector<Dart> arc(k + 1), sp_lo(k + 1), sp_hi(k + 1);
  for (int i = 1; i <= k; ++i) arc[i] = rs.addEdge(pid(i), pid(i + 1));
  for (int i = 1; i <= k; ++i) {
    sp_lo[i] = rs.addEdge(pid(i), aidOfIndex(i));
    sp_hi[i] = rs.addEdge(pid(i + 1), aidOfIndex(i));
  }

  // chord chains: a(lo) -> crossings in order -> a(hi)
  struct CrossDarts {
    Dart to_lo = 0, to_hi = 0;  // darts at the crossing, along one chord
  };
  std::vector<CrossDarts> xa(cn), xb(cn);
  std::vector<Dart> end_dart(2 * static_cast<std::size_t>(k), 0);
  std::vector<std::vector<Dart>> chord_segs(arr.chords.size());
  for (std::size_t c = 0; c < arr.chords.size(); ++c) {
    const auto [lo, hi] = arr.chords[c];
    std::vector<std::uint32_t> nodes{aidOfSlot(lo)};
    for (int x : arr.along_chord[c]) nodes.push_back(static_cast<std::uint32_t>(2 * k + x));
    nodes.push_back(aidOfSlot(hi));
    Dart prev = 0;
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
      const Dart seg = rs.addEdge(nodes[j], nodes[j + 1]);
      chord_segs[c].push_back(seg);
      if (j == 0) {
        end_dart[lo] = seg;
      } else {
        const int x = arr.along_chord[c][j - 1];
        CrossDarts& cd = static_cast<int>(c) == arr.crossings[x].chord_a ? xa[x] : xb[x];
        cd.to_lo = RotationSystem::twin(prev);
        cd.to_hi = seg;
      }
      prev = seg;
    }
    end_dart[hi] = RotationSystem::twin(prev);
  }

  for (int i = 1; i <= k; ++i) {
    const int p = (i - 2 + k) % k + 1;  // index of p_(i-1)
    rs.setRotation(pid(i), {RotationSystem::twin(arc[p]), sp_hi[p], sp_lo[i], arc[i]});
  }
  for (int i = 1; i <= k; ++i)
    rs.setRotation(aidOfIndex(i),
                   {end_dart[slotOfL(k, i)], RotationSystem::twin(sp_hi[i]),
                    RotationSystem::twin(sp_lo[i]), end_dart[slotOfR(k, i % k + 1)]});
  for (int x = 0; x < cn; ++x) {
    const auto& cr = arr.crossings[x];
    const ExactPoint& pa = arr.slot_point[arr.chords[cr.chord_a].first];
    const ExactPoint& pb = arr.slot_point[arr.chords[cr.chord_a].second];
    const ExactPoint& pc = arr.slot_point[arr.chords[cr.chord_b].first];
    const mpq_class orient =
        (pb.x - pa.x) * (pc.y - pa.y) - (pb.y - pa.y) * (pc.x - pa.x);
    if (orient == 0)
      throw Error(Err::InternalDegeneracy, "chords through a crossing are collinear", x);
    const std::vector<Dart> rot =
        orient < 0 ? std::vector<Dart>{xa[x].to_lo, xb[x].to_lo, xa[x].to_hi, xb[x].to_hi}
                   : std::vector<Dart>{xa[x].to_lo, xb[x].to_hi, xa[x].to_hi, xb[x].to_lo};
    rs.setRotation(static_cast<std::uint32_t>(2 * k + x), rot);
  }
  rs.validate();
  FlagMap g = toFlagMap(rs);
  std::vector<Dart> arc_darts(arc.begin() + 1, arc.end());
  const Dart d12 = arc[1];

  // structural postconditions
  const Cells cg = cells(g);
  const std::uint32_t want_v = static_cast<std::uint32_t>(2 * k + cn);
  const std::uint32_t want_e = static_cast<std::uint32_t>(4 * k + 2 * cn);
  if (cg.vertexCount() != want_v || cg.edgeCount() != want_e ||
      cg.faceCount() != want_e - want_v + 2 || eulerCharacteristic(g) != 2)
    throw Error(Err::InternalDegeneracy, "assembled plane graph has wrong cell counts");
  std::vector<int> deg(cg.vertexCount(), 0);
  for (Flag f = 0; f < g.flagCount(); ++f) ++deg[cg.vertex_of[f]];
  for (int d : deg)
    if (d != 8) throw Error(Err::InternalDegeneracy, "assembled plane graph is not 4-regular");

  const std::vector<signed char> colors = chessColoring(g);
  const std::uint32_t outer = cg.face_of[2 * d12 + 0];
  const signed char black = colors[cg.face_of[2 * d12 + 1]];
  if (colors[outer] == black)
    throw Error(Err::InternalDegeneracy, "outer face and corner triangle share a color");
  std::uint32_t outer_flags = 0;
  for (Flag f = 0; f < g.flagCount(); ++f)
    if (cg.face_of[f] == outer) ++outer_flags;
  if (outer_flags != 2 * static_cast<std::uint32_t>(k))
    throw Error(Err::InternalDegeneracy, "outer face is not a k-gon");
  for (int i = 1; i <= k; ++i) {
    if (cg.face_of[2 * arc[i] + 0] != outer)
      throw Error(Err::InternalDegeneracy, "polygon arc lost the outer face", i);
    if (colors[cg.face_of[2 * arc[i] + 1]] != black)
      throw Error(Err::InternalDegeneracy, "corner triangle is not black", i);
  }
  if (centralCircuits(g).size() != curves.size())
    throw Error(Err::InternalDegeneracy,
                "central circuits do not match the closed curves of the diagram");

  // marks: vertices p_i and a_(i,i+1) at flags on black faces, plus the
  // outer face itself (white, so it stays behind when the radial is taken)
  for (int i = 1; i <= k; ++i)
    g.setMark("p" + std::to_string(i), 2 * arc[i] + 1);
  for (int i = 1; i <= k; ++i) {
    const std::uint32_t tri = cg.face_of[2 * arc[i] + 1];
    Flag best = kNoFlag;
    for (Flag f = 0; f < g.flagCount(); ++f)
      if (cg.vertex_of[f] == aidOfIndex(i) && cg.face_of[f] == tri && f < best) best = f;
    if (best == kNoFlag)
      throw Error(Err::InternalDegeneracy, "corner hub misses its triangle", i);
    g.setMark("a" + std::to_string(i) + std::to_string(i % k + 1), best);
  }
  g.setMark("outer_face", 2 * d12 + 0);

  // exact drawing data: p_i on radius 3, hubs on radius 2, slot ring radius 1
  std::vector<ExactPoint> vertex_point(want_v);
  for (int i = 1; i <= k; ++i)
    vertex_point[pid(i)] = detail::scalePoint(circlePoint(mpq_class(-(4 * i - 1), 2)), 3);
  for (int i = 1; i <= k; ++i) {
    const int m = 2 * (i % k);  // lower slot of the hub's gap
    vertex_point[aidOfIndex(i)] =
        detail::scalePoint(circlePoint(mpq_class(-(2 * m + 1), 2)), 2);
  }
  for (int x = 0; x < cn; ++x)
    vertex_point[static_cast<std::size_t>(2 * k + x)] = arr.crossings[x].p;

  std::vector<std::vector<ExactPoint>> edge_path(cg.edgeCount());
  std::vector<std::string> edge_kind(cg.edgeCount());
  const auto edgeOf = [&](Dart d) { return cg.edge_of[2 * d]; };
  for (int i = 1; i <= k; ++i) {
    edge_path[edgeOf(arc[i])] = {vertex_point[pid(i)], vertex_point[pid(i + 1)]};
    edge_kind[edgeOf(arc[i])] = "arc";
    edge_path[edgeOf(sp_lo[i])] = {vertex_point[pid(i)], vertex_point[aidOfIndex(i)]};
    edge_kind[edgeOf(sp_lo[i])] = "spoke";
    edge_path[edgeOf(sp_hi[i])] = {vertex_point[pid(i + 1)], vertex_point[aidOfIndex(i)]};
    edge_kind[edgeOf(sp_hi[i])] = "spoke";
  }
  for (std::size_t c = 0; c < arr.chords.size(); ++c) {
    const auto [lo, hi] = arr.chords[c];
    for (std::size_t j = 0; j < chord_segs[c].size(); ++j) {
      const Dart seg = chord_segs[c][j];
      std::vector<ExactPoint> path;
      if (j == 0) {
        path.push_back(vertex_point[aidOfSlot(lo)]);
        path.push_back(arr.slot_point[lo]);
      } else {
        path.push_back(arr.crossings[arr.along_chord[c][j - 1]].p);
      }
      if (j + 1 == chord_segs[c].size()) {
        path.push_back(arr.slot_point[hi]);
        path.push_back(vertex_point[aidOfSlot(hi)]);
      } else {
        path.push_back(arr.crossings[arr.along_chord[c][j]].p);
      }
      edge_path[edgeOf(seg)] = std::move(path);
      edge_kind[edgeOf(seg)] = "chord";
    }
  }
  return PlanarBuild{k,
                     std::move(matching),
                     std::move(arr),
                     std::move(curves),
                     std::move(g),
                     std::move(arc_darts),
                     colors,
                     black,
                     std::move(vertex_point),
                     std::move(edge_path),
                     std::move(edge_kind)};
}

/// Black radial of the assembled graph, with the frame marks carried over.
/// The outer face becomes the framed k-gon: e_j is the edge over p_j, its
/// head flag sits on the triangle over the corner a_(j,j+1).
struct FramedRadial {
  FlagMap gamma;
  RadialMap rad;
  FaceFrame frame;
};

inline FramedRadial blackRadial(const PlanarBuild& b) {
  RadialMap rad = extractRadial(b.g, b.colors, b.black);
  FlagMap gamma = rad.map;
  for (const auto& [name, f] : b.g.marks()) {
    const Flag t = rad.from_host[f];
    if (t != kNoFlag) gamma.setMark(name, t);
  }
  const Flag e1 = rad.from_host[2 * b.dart12() + 1];
  if (e1 == kNoFlag)
    throw Error(Err::InternalDegeneracy, "frame seed flag is not on a black face");
  gamma.setMark("e1", e1);
  gamma.setMark("face_F", e1);
  const FaceFrame frame = frameAt(gamma, e1);
  if (frame.k != b.k)
    throw Error(Err::InternalDegeneracy, "framed face degree is off", frame.k, b.k);
  const auto heads = frameHeads(gamma, frame);
  for (int j = 1; j <= b.k; ++j)
    if (heads[static_cast<std::size_t>(j - 1)] != rad.from_host[2 * b.arc_darts[j - 1] + 1])
      throw Error(Err::InternalDegeneracy, "boundary frame does not follow the polygon", j);
  return FramedRadial{std::move(gamma), std::move(rad), frame};
}

/// A finished sphere realization: the repaired map, the frame of the face
/// whose z-monodromy equals the requested candidate, the geometric build it
/// came from, and the repair trace.
struct Realization {
  FlagMap gamma;
  FaceFrame frame;
  PlanarBuild build;
  std::vector<RepairStep> steps;
};

/// Realize sigma as the z-monodromy of a k-gonal face of a sphere map that
/// is simple on both sides.  The output is verified, never trusted: throws
/// VerificationMismatch if the monodromy of the framed face differs from
/// sigma after repair.
inline Realization realizePlanar(const ZPerm& sigma) {
  PlanarBuild b = assembleQuadMap(sigma);
  FramedRadial fr = blackRadial(b);
  RepairResult rr = repair(fr.gamma, "e1");
  const FaceFrame frame = frameAt(rr.map, rr.map.mark("e1"));
  const ZPerm got = zMonodromy(rr.map, frame);
  if (!(got == sigma))
    throw Error(Err::VerificationMismatch,
                "realized z-monodromy " + formatCandidate(got) +
                    " differs from the candidate " + formatCandidate(sigma));
  return Realization{std::move(rr.map), frame, std::move(b),
                     std::move(rr.steps)};
}

}  // namespace zmono

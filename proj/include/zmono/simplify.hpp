#pragma once

// Repair of a sphere map toward two-sided simplicity (no loops or parallel
// edges in the map or its dual) while one protected face keeps its boundary
// cycle and its z-monodromy.  The primitives are rotation-system surgeries:
//
//   removeLoopFace  delete a loop edge that bounds a face
//   expandEdge      reroute an edge through a five-vertex patch, dropping
//                   the multiplicity between its endpoints by one
//   expandLoop      reroute a non-face-bounding loop through a four-vertex
//                   patch, removing the loop
//   stitchCorners   split a face in two by a degree-4 vertex bridged across
//                   two of its corners
//
// Each patch replaces the two circuit strands through the old edge with
// trails through the patch, and a stitch only adds strand crossings, so the
// zigzag visit order around any untouched face is preserved; repair checks
// that invariant on the protected face after every step instead of trusting
// it.  Dual-side defects are fixed by the same primitives applied to the
// dual map, round-tripped through its rotation system.
//
// The stitch exists because a face pair sharing several edges may involve
// the protected face itself; every shared edge then lies on that face and
// no copy may be expanded.  Splitting the other face of the pair strictly
// lowers the shared count and leaves only bigons and parallel pairs away
// from the protected face, which the expansion patches then clean up.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zmono/core.hpp"
#include "zmono/monodromy.hpp"
#include "zmono/rotation.hpp"
#include "zmono/violations.hpp"

namespace zmono {

/// Delete a loop edge bounding a face (its two darts are rotation-adjacent
/// on one side).  (V,E,F) changes by (0,-1,-1).
inline void removeLoopFace(RotationSystem& rs, Dart d) {
  const Dart t = RotationSystem::twin(d);
  if (rs.origin(d) != rs.origin(t))
    throw Error(Err::NotAFaceLoop, "edge to remove is not a loop");
  if (rs.rho(d) != t && rs.rho(t) != d)
    throw Error(Err::NotAFaceLoop, "loop does not bound a face");
  rs.removeEdge(d);
}

/// Replace the edge of dart d (endpoints must be distinct) with a
/// five-vertex patch.  The patch joins each new vertex to old vertices at
/// most once and contains no loops, so the multiplicity between the old
/// endpoints drops by one and no new loop or parallel pair appears among
/// the old vertices.  (V,E,F) grows by (5,11,6).
inline void expandEdge(RotationSystem& rs, Dart d) {
  const Dart dpp = RotationSystem::twin(d);
  const std::uint32_t vp = rs.origin(d);
  const std::uint32_t vpp = rs.origin(dpp);
  if (vp == vpp)
    throw Error(Err::InternalDegeneracy, "expandEdge target is a loop");
  const std::uint32_t nw = rs.addVertex();
  const std::uint32_t sw = rs.addVertex();
  const std::uint32_t ne = rs.addVertex();
  const std::uint32_t se = rs.addVertex();
  const std::uint32_t nn = rs.addVertex();
  const Dart nw_sw = rs.addEdge(nw, sw);
  const Dart sw_se = rs.addEdge(sw, se);
  const Dart se_ne = rs.addEdge(se, ne);
  const Dart ne_nw = rs.addEdge(ne, nw);
  const Dart nw_n = rs.addEdge(nw, nn);
  const Dart n_ne = rs.addEdge(nn, ne);
  const Dart nw_vp = rs.addEdge(nw, vp);
  const Dart sw_vp = rs.addEdge(sw, vp);
  const Dart ne_vpp = rs.addEdge(ne, vpp);
  const Dart se_vpp = rs.addEdge(se, vpp);
  const Dart n_vpp = rs.addEdge(nn, vpp);
  const Dart sw_vpp = rs.addEdge(sw, vpp);  // runs around the south side
  const auto T = RotationSystem::twin;
  rs.replaceDartWith(d, {T(sw_vp), T(nw_vp)});
  rs.replaceDartWith(dpp, {T(n_vpp), T(ne_vpp), T(se_vpp), T(sw_vpp)});
  rs.setRotation(nw, {T(ne_nw), nw_n, nw_vp, nw_sw});
  rs.setRotation(sw, {sw_se, T(nw_sw), sw_vp, sw_vpp});
  rs.setRotation(ne, {T(n_ne), ne_nw, T(se_ne), ne_vpp});
  rs.setRotation(se, {se_vpp, se_ne, T(sw_se)});
  rs.setRotation(nn, {T(nw_n), n_ne, n_vpp});
}

/// Replace a loop that does not bound a face with a four-vertex patch,
/// keeping every other dart at the loop vertex in place.  The smaller dart's
/// rotation slot receives the upper arc, the larger dart's slot the lower
/// fan.  (V,E,F) grows by (4,8,4).
inline void expandLoop(RotationSystem& rs, Dart d) {
  const std::uint32_t vp = rs.origin(d);
  if (rs.origin(RotationSystem::twin(d)) != vp)
    throw Error(Err::InternalDegeneracy, "expandLoop target is not a loop");
  const Dart d_up = std::min(d, RotationSystem::twin(d));
  const Dart d_down = RotationSystem::twin(d_up);
  if (rs.rho(d_up) == d_down || rs.rho(d_down) == d_up)
    throw Error(Err::InternalDegeneracy,
                "loop bounds a face; removeLoopFace handles it");
  const std::uint32_t t0 = rs.addVertex();
  const std::uint32_t c0 = rs.addVertex();
  const std::uint32_t w0 = rs.addVertex();
  const std::uint32_t e0 = rs.addVertex();
  const Dart arc_up = rs.addEdge(vp, t0);
  const Dart arc_mid = rs.addEdge(t0, c0);
  const Dart arc_down = rs.addEdge(c0, vp);
  const Dart w_c = rs.addEdge(w0, c0);
  const Dart c_e = rs.addEdge(c0, e0);
  const Dart w_t = rs.addEdge(w0, t0);
  const Dart t_e = rs.addEdge(t0, e0);
  const Dart curve_in = rs.addEdge(vp, w0);
  const Dart curve_out = rs.addEdge(vp, e0);
  const auto T = RotationSystem::twin;
  rs.replaceDartWith(d_up, {arc_up});
  rs.replaceDartWith(d_down, {curve_out, T(arc_down), curve_in});
  rs.setRotation(t0, {T(arc_up), T(w_t), arc_mid, t_e});
  rs.setRotation(c0, {c_e, T(arc_mid), T(w_c), arc_down});
  rs.setRotation(w0, {w_c, w_t, T(curve_in)});
  rs.setRotation(e0, {T(t_e), T(c_e), T(curve_out)});
}

/// Split the face walking through the corner gaps just before darts t1 and
/// t2 (the gap between rhoInv(t) and t must belong to that face at both
/// darts).  A new degree-4 vertex is bridged across: two parallel edges
/// into each gap, with the twisted hub rotation that closes one bigon per
/// gap and exchanges the two walk stretches.  The stretch ending at t1's
/// gap and the one ending at t2's gap land on different faces; the faces
/// around every other vertex gap are untouched.  (V,E,F) grows by (1,4,3).
inline void stitchCorners(RotationSystem& rs, Dart t1, Dart t2) {
  const std::uint32_t x1 = rs.origin(t1);
  const std::uint32_t x2 = rs.origin(t2);
  if (t1 == t2 || x1 == x2)
    throw Error(Err::InternalDegeneracy, "stitch needs two distinct corners");
  const std::vector<Dart> old1 = rs.vertexDarts(x1);
  const std::vector<Dart> old2 = rs.vertexDarts(x2);
  const std::uint32_t w0 = rs.addVertex();
  const Dart n1 = rs.addEdge(x1, w0);
  const Dart n2 = rs.addEdge(x1, w0);
  const Dart m1 = rs.addEdge(x2, w0);
  const Dart m2 = rs.addEdge(x2, w0);
  const auto with_insert = [](const std::vector<Dart>& old, Dart before, Dart a,
                              Dart b) {
    std::vector<Dart> out;
    out.reserve(old.size() + 2);
    for (Dart d : old) {
      if (d == before) {
        out.push_back(a);
        out.push_back(b);
      }
      out.push_back(d);
    }
    return out;
  };
  rs.setRotation(x1, with_insert(old1, t1, n1, n2));
  rs.setRotation(x2, with_insert(old2, t2, m1, m2));
  const auto T = RotationSystem::twin;
  rs.setRotation(w0, {T(n2), T(n1), T(m2), T(m1)});
}

// ---------------------------------------------------------------------------
// The repair loop.

struct RepairStep {
  int step = 0;
  std::string kind;          // loop-face, loop, parallel, dual-*(same), face-split
  std::uint32_t site = 0;    // smallest edge id involved
  std::uint32_t vertices = 0, edges = 0, faces = 0;  // counts after the step
  bool monodromy_ok = false; // protected-face z-monodromy unchanged so far
};

struct RepairResult {
  FlagMap map;
  std::vector<RepairStep> steps;
};

namespace detail {

/// Flags of the face orbit through base.
inline std::vector<Flag> faceOrbitFlags(const FlagMap& m, Flag base) {
  std::vector<Flag> out;
  Flag f = base;
  do {
    out.push_back(f);
    out.push_back(m.s0(f));
    f = m.s1(m.s0(f));
  } while (f != base);
  return out;
}

/// edge id -> lies on the face through base.
inline std::vector<char> edgeOnFace(const FlagMap& m, const Cells& c, Flag base) {
  std::vector<char> on(c.edgeCount(), 0);
  for (Flag f : faceOrbitFlags(m, base)) on[c.edge_of[f]] = 1;
  return on;
}

/// Progress measure: weighted defect first, then edge count.  Face-pair
/// defects touching the protected face weigh triple because a stitch trades
/// one of them for two parallel pairs; every other primitive removes a unit
/// outright, and unit-neutral steps (pendant chains) strictly shrink E.
struct RepairProgress {
  long defect = 0;
  std::uint32_t edge_count = 0;
  bool betterThan(const RepairProgress& before) const {
    return defect < before.defect ||
           (defect == before.defect && edge_count < before.edge_count);
  }
};

inline RepairProgress measureProgress(const std::vector<Violation>& vio,
                                      const std::vector<char>& on_f,
                                      std::uint32_t edge_count) {
  long plain = 0, guarded = 0;
  for (const Violation& v : vio) {
    switch (v.kind) {
      case ViolationKind::LoopFace:
      case ViolationKind::LoopNonFace:
        plain += 1;
        break;
      case ViolationKind::ParallelEdges: {
        const long excess = static_cast<long>(v.edges.size()) - 1;
        const bool protected_pair =
            v.on_dual && on_f[v.edges.front()] != 0;
        (protected_pair ? guarded : plain) += excess;
        break;
      }
      default:
        break;  // one-face / face-pair entries mirror the other side's scan
    }
  }
  return RepairProgress{plain + 3 * guarded, edge_count};
}

struct RepairPlan {
  enum class Op { RemoveLoop, ExpandLoop, ExpandEdge, Stitch } op = Op::RemoveLoop;
  bool on_dual = false;
  std::uint32_t edge = 0;   // surgery target (primal edge id; dual shares ids)
  std::uint32_t edge2 = 0;  // second target, stitch only
  const char* kind = "";
  std::uint32_t site = 0;
};

/// First actionable defect: primal loops and parallel classes, then
/// dual-side ones, with face-pair defects through the protected face turned
/// into stitches.  Parallel classes whose eligible copies are all one-face
/// edges are deferred (expanding such a copy trades the defect for an equal
/// dual one; the dual pass rebuilds those copies first).
inline RepairPlan selectRepair(const FlagMap& m, const Cells& c,
                               const std::vector<Violation>& vio,
                               const std::vector<char>& on_f) {
  const auto one_face = [&](std::uint32_t e) {
    const Flag f = c.edge_rep[e];
    return c.face_of[f] == c.face_of[m.s2(f)];
  };
  const auto is_loop = [&](std::uint32_t e) {
    const Flag f = c.edge_rep[e];
    return c.vertex_of[f] == c.vertex_of[m.s0(f)];
  };
  for (const Violation& v : vio) {
    RepairPlan plan;
    plan.on_dual = v.on_dual;
    plan.site = v.site;
    switch (v.kind) {
      case ViolationKind::LoopFace:
      case ViolationKind::LoopNonFace:
        if (on_f[v.site])
          throw Error(Err::ProtectedFaceViolation,
                      "loop on the protected face", v.site);
        plan.op = v.kind == ViolationKind::LoopFace ? RepairPlan::Op::RemoveLoop
                                                    : RepairPlan::Op::ExpandLoop;
        plan.edge = v.site;
        plan.kind = v.on_dual
                        ? (v.kind == ViolationKind::LoopFace ? "dual-loop-face"
                                                             : "dual-loop")
                        : (v.kind == ViolationKind::LoopFace ? "loop-face"
                                                             : "loop");
        return plan;
      case ViolationKind::ParallelEdges: {
        if (v.on_dual) {
          bool touches_f = false;
          for (std::uint32_t e : v.edges) touches_f = touches_f || on_f[e] != 0;
          if (touches_f) {
            plan.op = RepairPlan::Op::Stitch;
            plan.on_dual = false;  // the stitch itself is a primal surgery
            plan.edge = v.edges[0];
            plan.edge2 = v.edges[1];
            plan.kind = "face-split";
            return plan;
          }
        }
        std::uint32_t pick = kNoFlag;
        bool any_eligible = false;
        for (std::uint32_t e : v.edges) {
          if (on_f[e]) continue;
          any_eligible = true;
          // for a dual-side class the deferral test is dual one-face-ness,
          // i.e. the copy being a primal loop
          const bool deferred = v.on_dual ? is_loop(e) : one_face(e);
          if (!deferred) {
            pick = e;
            break;
          }
        }
        if (!any_eligible)
          throw Error(Err::ProtectedFaceViolation,
                      "every copy of a parallel class lies on the protected face",
                      v.site);
        if (pick == kNoFlag) continue;  // defer the class this round
        plan.op = RepairPlan::Op::ExpandEdge;
        plan.edge = pick;
        plan.kind = v.on_dual ? "dual-parallel" : "parallel";
        return plan;
      }
      default:
        break;  // mirrors of the other side
    }
  }
  throw Error(Err::PatchContractViolation,
              "defects remain but none is actionable");
}

/// Run fn against the rotation system of m (or of dual(m)), then rebuild the
/// flag map, carrying every mark across.  Marks whose dart died move to the
/// smallest surviving dart at their vertex; marks whose vertex died drop.
template <typename Fn>
FlagMap applySurgery(const FlagMap& m, bool on_dual, Fn&& fn) {
  const FlagMap side = on_dual ? dual(m) : m;
  HostedMap h = fromFlagMap(side);
  const Cells c = cells(side);
  struct MarkPos {
    std::string name;
    Dart dart;
    std::uint8_t bit;
    std::uint32_t at;
  };
  std::vector<MarkPos> positions;
  for (const auto& [name, flag] : side.marks())
    positions.push_back(
        {name, h.dart_of[flag], h.bit_of[flag], h.rs.origin(h.dart_of[flag])});

  fn(h.rs, h, c);

  const Compaction comp = h.rs.compact();
  FlagMap out = toFlagMap(h.rs);
  for (auto& pos : positions) {
    Dart d = pos.dart;
    if (comp.dart_map[d] == kNoFlag) {
      if (pos.at >= comp.vertex_map.size() || comp.vertex_map[pos.at] == kNoFlag)
        continue;  // the marked vertex is gone with its last edge
      d = kNoFlag;
      for (Dart cand = 0; cand < h.rs.dartLimit() && d == kNoFlag; ++cand)
        if (h.rs.origin(cand) == comp.vertex_map[pos.at]) d = cand;
      if (d == kNoFlag) continue;
      out.setMark(pos.name, 2 * d + pos.bit);
    } else {
      out.setMark(pos.name, 2 * comp.dart_map[d] + pos.bit);
    }
  }
  return on_dual ? dual(out) : out;
}

/// Class-0 flag of edge e lying on the protected face orbit; its hosted dart
/// is the face-walk dart of that edge, so the gap before it belongs to the
/// neighbouring face.
inline Dart faceWalkDart(const FlagMap& m, const HostedMap& h, const Cells& c,
                         const std::vector<char>& flag_on_f, std::uint32_t e) {
  const Flag r = c.edge_rep[e];
  for (Flag f : {r, m.s0(r), m.s2(r), m.s0(m.s2(r))})
    if (flag_on_f[f] && h.bit_of[f] == 0) return h.dart_of[f];
  throw Error(Err::EdgeNotOnFace, "edge is not on the protected face", e);
}

}  // namespace detail

/// Map-level loop removal: deletes loop edge e, which must bound a face, and
/// carries marks across (a mark on the dead edge moves to its vertex).
inline FlagMap removeLoopFace(const FlagMap& m, std::uint32_t e) {
  return detail::applySurgery(
      m, false, [&](RotationSystem& rs, const HostedMap&, const Cells&) {
        removeLoopFace(rs, 2 * e);
      });
}

/// Map-level expansion of edge e while the face through flag `protect` keeps
/// its boundary cycle: refuses edges on that face, and picks the loop patch
/// when e is a loop (which must then not bound a face).
inline FlagMap expandEdge(const FlagMap& m, std::uint32_t e, Flag protect) {
  const Cells c = cells(m);
  if (e >= c.edgeCount())
    throw Error(Err::InternalDegeneracy, "no such edge", e);
  if (detail::edgeOnFace(m, c, protect)[e])
    throw Error(Err::EdgeOnProtectedFace,
                "expansion target lies on the protected face", e);
  const Flag r = c.edge_rep[e];
  const bool loop = c.vertex_of[r] == c.vertex_of[m.s0(r)];
  return detail::applySurgery(
      m, false, [&](RotationSystem& rs, const HostedMap&, const Cells&) {
        if (loop)
          expandLoop(rs, 2 * e);
        else
          expandEdge(rs, 2 * e);
      });
}

/// Repair m to two-sided simplicity, keeping the boundary cycle and
/// z-monodromy of the face framed by mark `frame_mark` intact.  Throws
/// ProtectedFaceViolation / PatchContractViolation / RepairBudgetExceeded
/// when a step would break the face, fails to make progress, or the step
/// count outruns 10x the starting edge count.  An already-simple map comes
/// back unchanged with an empty step list.
inline RepairResult repair(const FlagMap& input,
                           const std::string& frame_mark = "e1") {
  const FaceFrame frame0 = frameAt(input, input.mark(frame_mark));
  const ZPerm m0 = zMonodromyUnchecked(input, frame0);
  const std::size_t budget = 10 * cells(input).edgeCount();

  RepairResult res{input, {}};
  FlagMap& m = res.map;
  for (;;) {
    const Cells c = cells(m);
    const std::vector<Violation> vio = findViolations(m);
    if (vio.empty()) break;
    if (res.steps.size() >= budget)
      throw Error(Err::RepairBudgetExceeded,
                  "no simple map within " + std::to_string(budget) + " steps");

    const Flag base = m.mark(frame_mark);
    const std::vector<char> on_f = detail::edgeOnFace(m, c, base);
    const auto before = detail::measureProgress(vio, on_f, c.edgeCount());
    const detail::RepairPlan plan = detail::selectRepair(m, c, vio, on_f);

    std::vector<char> flag_on_f(m.flagCount(), 0);
    for (Flag f : detail::faceOrbitFlags(m, base)) flag_on_f[f] = 1;

    FlagMap next = detail::applySurgery(
        m, plan.on_dual,
        [&](RotationSystem& rs, const HostedMap& h, const Cells& sc) {
          switch (plan.op) {
            case detail::RepairPlan::Op::RemoveLoop:
              removeLoopFace(rs, 2 * plan.edge);
              break;
            case detail::RepairPlan::Op::ExpandLoop:
              expandLoop(rs, 2 * plan.edge);
              break;
            case detail::RepairPlan::Op::ExpandEdge:
              expandEdge(rs, 2 * plan.edge);
              break;
            case detail::RepairPlan::Op::Stitch: {
              const Dart t1 =
                  detail::faceWalkDart(m, h, sc, flag_on_f, plan.edge);
              const Dart t2 =
                  detail::faceWalkDart(m, h, sc, flag_on_f, plan.edge2);
              stitchCorners(rs, t1, t2);
              break;
            }
          }
        });

    const FaceFrame frame = frameAt(next, next.mark(frame_mark));
    const bool mono_ok =
        frame.k == frame0.k && zMonodromyUnchecked(next, frame) == m0;

    RepairStep step;
    step.step = static_cast<int>(res.steps.size()) + 1;
    step.kind = plan.kind;
    step.site = plan.site;
    const Cells nc = cells(next);
    step.vertices = nc.vertexCount();
    step.edges = nc.edgeCount();
    step.faces = nc.faceCount();
    step.monodromy_ok = mono_ok;
    res.steps.push_back(step);

    if (!mono_ok)
      throw Error(Err::PatchContractViolation,
                  std::string("step '") + plan.kind +
                      "' changed the protected face", plan.site);
    const auto after = detail::measureProgress(
        findViolations(next), detail::edgeOnFace(next, nc, next.mark(frame_mark)),
        nc.edgeCount());
    if (!after.betterThan(before))
      throw Error(Err::PatchContractViolation,
                  std::string("step '") + plan.kind + "' made no progress",
                  plan.site);
    m = std::move(next);
  }
  return res;
}

}  // namespace zmono

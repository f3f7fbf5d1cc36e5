#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>
#include <vector>

#include "zmono/builders.hpp"
#include "zmono/core.hpp"
#include "zmono/monodromy.hpp"
#include "zmono/planar.hpp"
#include "zmono/rotation.hpp"
#include "zmono/simplify.hpp"
#include "zmono/violations.hpp"
#include "zmono/zigzag.hpp"

using namespace zmono;

namespace {

template <typename Fn>
Err errCodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Err::IoError;
}

struct Counts {
  std::uint32_t v, e, f;
};

Counts countsOf(const FlagMap& m) {
  const Cells c = cells(m);
  return {c.vertexCount(), c.edgeCount(), c.faceCount()};
}

// tetrahedron as a rotation system: vertex 0 centred inside triangle 1,2,3,
// so fixtures can hang loops off vertex 0 while face (1,2,3) stays clean
struct TetraRS {
  RotationSystem rs;
  Dart d01, d02, d03, d12, d13, d23;
};

TetraRS tetraRS() {
  TetraRS t;
  for (int i = 0; i < 4; ++i) t.rs.addVertex();
  t.d01 = t.rs.addEdge(0, 1);
  t.d02 = t.rs.addEdge(0, 2);
  t.d03 = t.rs.addEdge(0, 3);
  t.d12 = t.rs.addEdge(1, 2);
  t.d13 = t.rs.addEdge(1, 3);
  t.d23 = t.rs.addEdge(2, 3);
  const auto T = RotationSystem::twin;
  t.rs.setRotation(0, {t.d01, t.d02, t.d03});
  t.rs.setRotation(1, {t.d12, T(t.d01), t.d13});
  t.rs.setRotation(2, {t.d23, T(t.d02), T(t.d12)});
  t.rs.setRotation(3, {T(t.d13), T(t.d03), T(t.d23)});
  return t;
}

// the side of the edge orbit through `sample` whose face avoids all flags
// marked bad (used to aim the protected-face mark at face (1,2,3))
Flag faceFlagAvoiding(const FlagMap& m, const std::vector<char>& bad_flag,
                      Flag sample) {
  for (Flag f : {sample, m.s2(sample)}) {
    bool ok = true;
    for (Flag g : detail::faceOrbitFlags(m, f))
      if (bad_flag[g]) ok = false;
    if (ok) return f;
  }
  FAIL("no side of the sample edge avoids the bad flags");
  return kNoFlag;
}

std::vector<char> flagsAtVertex(const RotationSystem& rs, std::uint32_t v,
                                std::uint32_t flag_count) {
  std::vector<char> bad(flag_count, 0);
  for (Dart d = 0; d < rs.dartLimit(); ++d)
    if (rs.origin(d) == v) bad[2 * d] = bad[2 * d + 1] = 1;
  return bad;
}

bool sameMap(const FlagMap& a, const FlagMap& b) {
  if (a.flagCount() != b.flagCount()) return false;
  for (Flag f = 0; f < a.flagCount(); ++f)
    if (a.s0(f) != b.s0(f) || a.s1(f) != b.s1(f) || a.s2(f) != b.s2(f))
      return false;
  return a.marks() == b.marks();
}

std::vector<std::string> kindsOf(const RepairResult& rr) {
  std::vector<std::string> kinds;
  for (const auto& s : rr.steps) kinds.push_back(s.kind);
  return kinds;
}

void checkTraceBookkeeping(const RepairResult& rr) {
  for (std::size_t i = 0; i < rr.steps.size(); ++i) {
    CHECK(rr.steps[i].step == static_cast<int>(i) + 1);
    CHECK(rr.steps[i].monodromy_ok);
  }
  if (!rr.steps.empty()) {
    const Counts fin = countsOf(rr.map);
    CHECK(rr.steps.back().vertices == fin.v);
    CHECK(rr.steps.back().edges == fin.e);
    CHECK(rr.steps.back().faces == fin.f);
  }
}

// cyclic sequences of edge ids compared up to rotation and reversal
std::vector<std::uint32_t> canonicalEdgeCycle(std::vector<std::uint32_t> s) {
  const auto min_rotation = [](std::vector<std::uint32_t> cur) {
    std::vector<std::uint32_t> best = cur;
    for (std::size_t i = 1; i < best.size(); ++i) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      best = std::min(best, cur);
    }
    return best;
  };
  auto fwd = min_rotation(s);
  std::reverse(s.begin(), s.end());
  return std::min(fwd, min_rotation(std::move(s)));
}

}  // namespace

TEST_CASE("removing a face-bounding loop", "[simplify]") {
  SECTION("monogon loop at a tetrahedron vertex") {
    TetraRS t = tetraRS();
    const Dart l = t.rs.addEdge(0, 0);
    const auto T = RotationSystem::twin;
    t.rs.setRotation(0, {t.d01, t.d02, t.d03, l, T(l)});

    FlagMap before = toFlagMap(t.rs);
    CHECK(countsOf(before).e == 7);
    CHECK(eulerCharacteristic(before) == 2);

    removeLoopFace(t.rs, l);
    t.rs.compact();
    FlagMap after = toFlagMap(t.rs);
    const Counts c = countsOf(after);
    CHECK(c.v == 4);
    CHECK(c.e == 6);
    CHECK(c.f == 4);
    CHECK(eulerCharacteristic(after) == 2);
    CHECK(satisfiesSS(after));
  }

  SECTION("refuses a non-loop edge") {
    TetraRS t = tetraRS();
    CHECK(errCodeOf([&] { removeLoopFace(t.rs, t.d01); }) ==
          Err::NotAFaceLoop);
  }

  SECTION("refuses a loop that does not bound a face") {
    TetraRS t = tetraRS();
    const std::uint32_t p = t.rs.addVertex();
    const Dart l = t.rs.addEdge(0, 0);
    const Dart d0p = t.rs.addEdge(0, p);
    const auto T = RotationSystem::twin;
    // pendant edge inside the loop: neither side of the loop is a monogon
    t.rs.setRotation(0, {t.d01, t.d02, t.d03, l, d0p, T(l)});
    t.rs.setRotation(p, {T(d0p)});
    CHECK(errCodeOf([&] { removeLoopFace(t.rs, l); }) == Err::NotAFaceLoop);
  }

  SECTION("map-level removal relocates a mark living on the loop") {
    TetraRS t = tetraRS();
    const Dart l = t.rs.addEdge(0, 0);
    const auto T = RotationSystem::twin;
    t.rs.setRotation(0, {t.d01, t.d02, t.d03, l, T(l)});
    FlagMap m = toFlagMap(t.rs);
    m.setMark("probe", 2 * l);
    const std::uint32_t loop_edge = cells(m).edge_of[2 * l];

    FlagMap out = removeLoopFace(m, loop_edge);
    const Counts c = countsOf(out);
    CHECK(c.v == 4);
    CHECK(c.e == 6);
    CHECK(c.f == 4);
    // the loop's flags are gone; the mark moved to a flag at the same vertex
    REQUIRE(out.hasMark("probe"));
    CHECK(out.mark("probe") == 0);
  }
}

TEST_CASE("expanding an edge through the five-vertex patch", "[simplify]") {
  SECTION("theta graph: one copy of a triple edge") {
    RotationSystem rs;
    rs.addVertex();
    rs.addVertex();
    const auto T = RotationSystem::twin;
    const Dart a = rs.addEdge(0, 1);
    const Dart b = rs.addEdge(0, 1);
    const Dart c = rs.addEdge(0, 1);
    rs.setRotation(0, {a, b, c});
    rs.setRotation(1, {T(c), T(b), T(a)});
    FlagMap before = toFlagMap(rs);
    CHECK(countsOf(before).v == 2);
    CHECK(countsOf(before).e == 3);
    CHECK(countsOf(before).f == 3);

    expandEdge(rs, b);
    rs.compact();
    FlagMap after = toFlagMap(rs);
    const Counts ca = countsOf(after);
    CHECK(ca.v == 2 + 5);
    CHECK(ca.e == 3 + 11);
    CHECK(ca.f == 3 + 6);
    CHECK(eulerCharacteristic(after) == 2);

    // multiplicity dropped from 3 to 2 and the patch added no other defect
    const std::vector<Violation> vio = findViolations(after);
    REQUIRE(vio.size() == 2);
    CHECK(vio[0].on_dual == false);
    CHECK(vio[0].kind == ViolationKind::ParallelEdges);
    CHECK(vio[0].edges == std::vector<std::uint32_t>{0, 1});
    CHECK(vio[1].on_dual == true);
    CHECK(vio[1].kind == ViolationKind::FacePairMulti);
  }

  SECTION("refuses a loop") {
    TetraRS t = tetraRS();
    const Dart l = t.rs.addEdge(0, 0);
    const auto T = RotationSystem::twin;
    t.rs.setRotation(0, {t.d01, t.d02, t.d03, l, T(l)});
    CHECK(errCodeOf([&] { expandEdge(t.rs, l); }) == Err::InternalDegeneracy);
  }

  SECTION("zigzags that avoid the edge keep their edge sequences") {
    FlagMap m = cube();
    const Cells c = cells(m);
    const std::uint32_t target = 4;
    REQUIRE(!detail::edgeOnFace(m, c, 0)[target]);

    std::vector<std::vector<std::uint32_t>> keep;
    const ZigzagTrace before = traceZigzags(m);
    for (const auto& orbit : before.orbits) {
      std::vector<std::uint32_t> seq = zigzagEdges(c, orbit);
      if (std::find(seq.begin(), seq.end(), target) != seq.end()) continue;
      // the expansion drops edge `target`, shifting the ids above it
      for (auto& e : seq)
        if (e > target) --e;
      keep.push_back(canonicalEdgeCycle(seq));
    }
    REQUIRE(!keep.empty());

    FlagMap out = expandEdge(m, target, 0);
    const Cells c2 = cells(out);
    const ZigzagTrace after = traceZigzags(out);
    std::vector<std::vector<std::uint32_t>> got;
    for (const auto& orbit : after.orbits)
      got.push_back(canonicalEdgeCycle(zigzagEdges(c2, orbit)));
    for (const auto& want : keep)
      CHECK(std::find(got.begin(), got.end(), want) != got.end());
  }
}

TEST_CASE("expanding a loop through the four-vertex patch", "[simplify]") {
  // loop at vertex 0 enclosing a pendant triangle: bounds no face
  TetraRS t = tetraRS();
  const std::uint32_t p = t.rs.addVertex();
  const std::uint32_t q = t.rs.addVertex();
  const Dart l = t.rs.addEdge(0, 0);
  const Dart d0p = t.rs.addEdge(0, p);
  const Dart d0q = t.rs.addEdge(0, q);
  const Dart dpq = t.rs.addEdge(p, q);
  const auto T = RotationSystem::twin;
  t.rs.setRotation(0, {t.d01, t.d02, t.d03, l, d0p, d0q, T(l)});
  t.rs.setRotation(p, {dpq, T(d0p)});
  t.rs.setRotation(q, {T(d0q), T(dpq)});

  SECTION("patch deltas and loop removal") {
    FlagMap before = toFlagMap(t.rs);
    const Counts cb = countsOf(before);
    CHECK(cb.v == 6);
    CHECK(cb.e == 10);
    CHECK(cb.f == 6);
    CHECK(eulerCharacteristic(before) == 2);

    expandLoop(t.rs, l);
    t.rs.compact();
    FlagMap after = toFlagMap(t.rs);
    const Counts ca = countsOf(after);
    CHECK(ca.v == 6 + 4);
    CHECK(ca.e == 10 + 8);
    CHECK(ca.f == 6 + 4);
    CHECK(eulerCharacteristic(after) == 2);
    for (const Violation& v : findViolations(after))
      if (!v.on_dual)
        CHECK((v.kind != ViolationKind::LoopFace &&
               v.kind != ViolationKind::LoopNonFace));
  }

  SECTION("refuses a plain edge and a face-bounding loop") {
    CHECK(errCodeOf([&] { expandLoop(t.rs, t.d01); }) ==
          Err::InternalDegeneracy);
    TetraRS t2 = tetraRS();
    const Dart l2 = t2.rs.addEdge(0, 0);
    t2.rs.setRotation(0, {t2.d01, t2.d02, t2.d03, l2, T(l2)});
    CHECK(errCodeOf([&] { expandLoop(t2.rs, l2); }) ==
          Err::InternalDegeneracy);
  }
}

TEST_CASE("map-level expansion guards the protected face", "[simplify]") {
  FlagMap m = cube();
  const Cells c = cells(m);

  SECTION("edge on the protected face is refused") {
    CHECK(errCodeOf([&] { expandEdge(m, c.edge_of[0], 0); }) ==
          Err::EdgeOnProtectedFace);
  }

  SECTION("edge off the protected face expands and keeps the marks") {
    std::uint32_t target = kNoFlag;
    const auto on = detail::edgeOnFace(m, c, 0);
    for (std::uint32_t e = 0; e < c.edgeCount(); ++e)
      if (!on[e]) {
        target = e;
        break;
      }
    REQUIRE(target != kNoFlag);

    FlagMap out = expandEdge(m, target, 0);
    const Counts co = countsOf(out);
    CHECK(co.v == 8 + 5);
    CHECK(co.e == 12 + 11);
    CHECK(co.f == 6 + 6);
    CHECK(satisfiesSS(out));  // a simple-graph edge expands to a simple map
    CHECK(out.marks().size() == m.marks().size());
  }
}

TEST_CASE("stitching two corners splits the neighbouring face", "[simplify]") {
  FlagMap m = dihedron(4);
  m.setMark("e1", 0);
  const Cells c = cells(m);
  HostedMap h = fromFlagMap(m);
  std::vector<char> on_f(m.flagCount(), 0);
  for (Flag f : detail::faceOrbitFlags(m, 0)) on_f[f] = 1;
  const Dart t1 = detail::faceWalkDart(m, h, c, on_f, 0);
  const Dart t2 = detail::faceWalkDart(m, h, c, on_f, 1);
  REQUIRE(h.rs.origin(t1) != h.rs.origin(t2));

  const FaceFrame before_frame = frameAt(m, 0);
  const ZPerm before_mono = zMonodromyUnchecked(m, before_frame);
  const Flag f_after = hostedFlag(h, 0);

  stitchCorners(h.rs, t1, t2);
  FlagMap out = toFlagMap(h.rs);

  SECTION("deltas and byproducts") {
    const Counts co = countsOf(out);
    CHECK(co.v == 4 + 1);
    CHECK(co.e == 4 + 4);
    CHECK(co.f == 2 + 3);
    CHECK(eulerCharacteristic(out) == 2);

    // the two stitched edges now lie on different face pairs
    const Cells c2 = cells(out);
    const auto sides = [&](std::uint32_t e) {
      const Flag r = c2.edge_rep[e];
      return std::minmax(c2.face_of[r], c2.face_of[out.s2(r)]);
    };
    CHECK(sides(0) != sides(1));

    // byproducts: two parallel pairs toward the new vertex, and the shared
    // count of the old face pair dropped from four to three
    std::vector<std::string> kinds;
    for (const Violation& v : findViolations(out))
      if (!v.on_dual) kinds.push_back(violationName(v.kind));
    CHECK(kinds == std::vector<std::string>{"parallel", "parallel",
                                            "face-pair"});
  }

  SECTION("the protected face walk and monodromy survive") {
    const FaceFrame fr = frameAt(out, f_after);
    CHECK(fr.k == 4);
    CHECK(zMonodromyUnchecked(out, fr) == before_mono);
  }

  SECTION("degenerate corner picks are refused") {
    CHECK(errCodeOf([&] { stitchCorners(h.rs, t1, t1); }) ==
          Err::InternalDegeneracy);
  }
}

TEST_CASE("repair leaves a simple map untouched", "[simplify]") {
  FlagMap m = cube();
  m.setMark("e1", 0);
  const RepairResult rr = repair(m);
  CHECK(rr.steps.empty());
  CHECK(sameMap(rr.map, m));
}

TEST_CASE("repair untangles the pillow family", "[simplify]") {
  // dihedron(k): both faces share every edge, so repair must stitch the
  // neighbour apart and then expand the byproduct pairs, k-2 rounds
  SECTION("pinned trace for k=3") {
    FlagMap m = dihedron(3);
    m.setMark("e1", 0);
    const RepairResult rr = repair(m);
    CHECK(kindsOf(rr) ==
          std::vector<std::string>{"face-split", "parallel", "parallel",
                                   "face-split", "parallel", "parallel"});
    const Counts c = countsOf(rr.map);
    CHECK(c.v == 25);
    CHECK(c.e == 55);
    CHECK(c.f == 32);
    CHECK(satisfiesSS(rr.map));
    checkTraceBookkeeping(rr);

    const FaceFrame fr = frameAt(rr.map, rr.map.mark("e1"));
    CHECK(formatCandidate(zMonodromy(rr.map, fr)) == "(1,2,3)(-3,-2,-1)");
  }

  SECTION("k=4 and k=5 finish with one stitch round per excess unit") {
    FlagMap m4 = dihedron(4);
    m4.setMark("e1", 0);
    const RepairResult r4 = repair(m4);
    CHECK(r4.steps.size() == 9);
    CHECK(countsOf(r4.map).v == 37);
    CHECK(countsOf(r4.map).e == 82);
    CHECK(countsOf(r4.map).f == 47);
    CHECK(satisfiesSS(r4.map));
    checkTraceBookkeeping(r4);

    FlagMap m5 = dihedron(5);
    m5.setMark("e1", 0);
    const RepairResult r5 = repair(m5);
    CHECK(r5.steps.size() == 12);
    CHECK(countsOf(r5.map).v == 49);
    CHECK(countsOf(r5.map).e == 109);
    CHECK(countsOf(r5.map).f == 62);
    CHECK(satisfiesSS(r5.map));
    checkTraceBookkeeping(r5);

    const FaceFrame fr = frameAt(r5.map, r5.map.mark("e1"));
    CHECK(formatCandidate(zMonodromy(r5.map, fr)) ==
          "(1,2,3,4,5)(-5,-4,-3,-2,-1)");
  }
}

TEST_CASE("repair clears synthetic loop fixtures", "[simplify]") {
  SECTION("face-bounding loop off the protected face") {
    TetraRS t = tetraRS();
    const Dart l = t.rs.addEdge(0, 0);
    const auto T = RotationSystem::twin;
    t.rs.setRotation(0, {t.d01, t.d02, t.d03, l, T(l)});
    FlagMap m = toFlagMap(t.rs);
    const std::vector<char> bad = flagsAtVertex(t.rs, 0, m.flagCount());
    m.setMark("e1", faceFlagAvoiding(m, bad, 2 * t.d12));

    const RepairResult rr = repair(m);
    CHECK(kindsOf(rr) == std::vector<std::string>{"loop-face"});
    const Counts c = countsOf(rr.map);
    CHECK(c.v == 4);
    CHECK(c.e == 6);
    CHECK(c.f == 4);
    CHECK(satisfiesSS(rr.map));
    checkTraceBookkeeping(rr);
  }

  SECTION("face-bounding loop on the protected face is refused") {
    TetraRS t = tetraRS();
    const Dart l = t.rs.addEdge(0, 0);
    const auto T = RotationSystem::twin;
    t.rs.setRotation(0, {t.d01, t.d02, t.d03, l, T(l)});
    FlagMap m = toFlagMap(t.rs);
    // protect the face hosting the loop from outside (the non-monogon side)
    const Cells c = cells(m);
    std::vector<std::uint32_t> face_flags(c.faceCount(), 0);
    for (Flag f = 0; f < m.flagCount(); ++f) face_flags[c.face_of[f]]++;
    const Flag host = face_flags[c.face_of[2 * l]] == 2 ? m.s2(2 * l) : 2 * l;
    m.setMark("e1", host);
    CHECK(errCodeOf([&] { repair(m); }) == Err::ProtectedFaceViolation);
  }

  SECTION("free loop enclosing a triangle") {
    TetraRS t = tetraRS();
    const std::uint32_t p = t.rs.addVertex();
    const std::uint32_t q = t.rs.addVertex();
    const Dart l = t.rs.addEdge(0, 0);
    const Dart d0p = t.rs.addEdge(0, p);
    const Dart d0q = t.rs.addEdge(0, q);
    const Dart dpq = t.rs.addEdge(p, q);
    const auto T = RotationSystem::twin;
    t.rs.setRotation(0, {t.d01, t.d02, t.d03, l, d0p, d0q, T(l)});
    t.rs.setRotation(p, {dpq, T(d0p)});
    t.rs.setRotation(q, {T(d0q), T(dpq)});
    FlagMap m = toFlagMap(t.rs);
    const std::vector<char> bad = flagsAtVertex(t.rs, 0, m.flagCount());
    m.setMark("e1", faceFlagAvoiding(m, bad, 2 * t.d12));

    const RepairResult rr = repair(m);
    CHECK(kindsOf(rr) == std::vector<std::string>{"loop", "dual-parallel",
                                                  "dual-parallel"});
    const Counts c = countsOf(rr.map);
    CHECK(c.v == 22);
    CHECK(c.e == 40);
    CHECK(c.f == 20);
    CHECK(satisfiesSS(rr.map));
    checkTraceBookkeeping(rr);
  }

  SECTION("bridge between two tetrahedra") {
    RotationSystem rs;
    for (int i = 0; i < 8; ++i) rs.addVertex();
    const auto T = RotationSystem::twin;
    const Dart a01 = rs.addEdge(0, 1), a02 = rs.addEdge(0, 2);
    const Dart a03 = rs.addEdge(0, 3), a12 = rs.addEdge(1, 2);
    const Dart a13 = rs.addEdge(1, 3), a23 = rs.addEdge(2, 3);
    const Dart b45 = rs.addEdge(4, 5), b46 = rs.addEdge(4, 6);
    const Dart b47 = rs.addEdge(4, 7), b56 = rs.addEdge(5, 6);
    const Dart b57 = rs.addEdge(5, 7), b67 = rs.addEdge(6, 7);
    const Dart br = rs.addEdge(3, 5);  // bridge inside the shared outer face
    rs.setRotation(0, {a01, a02, a03});
    rs.setRotation(1, {a12, T(a01), a13});
    rs.setRotation(2, {a23, T(a02), T(a12)});
    rs.setRotation(3, {T(a13), T(a03), T(a23), br});
    rs.setRotation(4, {b45, b46, b47});
    rs.setRotation(5, {b56, T(b45), b57, T(br)});
    rs.setRotation(6, {b67, T(b46), T(b56)});
    rs.setRotation(7, {T(b57), T(b47), T(b67)});
    FlagMap m = toFlagMap(rs);
    CHECK(countsOf(m).e == 13);
    CHECK(eulerCharacteristic(m) == 2);

    // the only defect is the bridge: one face on both sides, a loop in the
    // dual that bounds no face there
    const std::vector<Violation> vio = findViolations(m);
    REQUIRE(vio.size() == 2);
    CHECK(vio[0].on_dual == false);
    CHECK(vio[0].kind == ViolationKind::OneFaceEdge);
    CHECK(vio[0].site == 12);
    CHECK(vio[1].on_dual == true);
    CHECK(vio[1].kind == ViolationKind::LoopNonFace);
    CHECK(vio[1].site == 12);

    std::vector<char> bad(m.flagCount(), 0);
    for (Dart d = 0; d < rs.dartLimit(); ++d)
      if (rs.origin(d) == 3 || rs.origin(T(d)) == 3)
        bad[2 * d] = bad[2 * d + 1] = 1;
    m.setMark("e1", faceFlagAvoiding(m, bad, 2 * a12));

    const RepairResult rr = repair(m);
    CHECK(kindsOf(rr) == std::vector<std::string>{"dual-loop"});
    const Counts c = countsOf(rr.map);
    CHECK(c.v == 12);
    CHECK(c.e == 21);
    CHECK(c.f == 11);
    CHECK(satisfiesSS(rr.map));
    checkTraceBookkeeping(rr);
  }
}

TEST_CASE("repair straightens the rotation candidate", "[simplify]") {
  // the rotation's raw radial is the k-cycle with pendants: the protected
  // face shares every cycle edge with its neighbour, forcing stitches
  const ZPerm sigma = rotationDF(3);
  const PlanarBuild b = assembleQuadMap(sigma);
  const FramedRadial fr = blackRadial(b);

  const Counts raw = countsOf(fr.gamma);
  CHECK(raw.v == 6);
  CHECK(raw.e == 6);
  CHECK(raw.f == 2);

  std::vector<std::string> raw_kinds;
  for (const Violation& v : findViolations(fr.gamma))
    raw_kinds.push_back(std::string(v.on_dual ? "dual " : "") +
                        violationName(v.kind));
  CHECK(raw_kinds == std::vector<std::string>{
                         "one-face", "one-face", "one-face", "face-pair",
                         "dual loop-face", "dual loop-face", "dual loop-face",
                         "dual parallel"});

  const RepairResult rr = repair(fr.gamma);
  CHECK(kindsOf(rr) ==
        std::vector<std::string>{"dual-loop-face", "dual-loop-face",
                                 "dual-loop-face", "face-split", "parallel",
                                 "parallel", "face-split", "parallel",
                                 "parallel"});
  const Counts c = countsOf(rr.map);
  CHECK(c.v == 25);
  CHECK(c.e == 55);
  CHECK(c.f == 32);
  CHECK(satisfiesSS(rr.map));
  checkTraceBookkeeping(rr);

  const FaceFrame frame = frameAt(rr.map, rr.map.mark("e1"));
  CHECK(zMonodromy(rr.map, frame) == sigma);
}

TEST_CASE("repair reproduces the chord pipeline regression", "[simplify]") {
  const std::string text = "(1,-6,-4,2)(3,-5)(5,-3)(-2,4,6,-1)";
  const ZPerm sigma = parseCandidate(text, 6);
  const PlanarBuild b = assembleQuadMap(sigma);

  const Counts g = countsOf(b.g);
  CHECK(g.v == 17);
  CHECK(g.e == 34);
  CHECK(g.f == 19);

  const FramedRadial fr = blackRadial(b);
  const Counts raw = countsOf(fr.gamma);
  CHECK(raw.v == 12);
  CHECK(raw.e == 17);
  CHECK(raw.f == 7);

  // two face pairs, mirrored as parallel classes of the dual
  const std::vector<Violation> vio = findViolations(fr.gamma);
  REQUIRE(vio.size() == 4);
  CHECK(vio[0].kind == ViolationKind::FacePairMulti);
  CHECK(vio[0].edges == std::vector<std::uint32_t>{6, 14});
  CHECK(vio[1].kind == ViolationKind::FacePairMulti);
  CHECK(vio[1].edges == std::vector<std::uint32_t>{7, 13});
  CHECK(vio[2].on_dual);
  CHECK(vio[2].kind == ViolationKind::ParallelEdges);
  CHECK(vio[3].on_dual);
  CHECK(vio[3].kind == ViolationKind::ParallelEdges);

  // each dual expansion clears one pair, mirroring the worked constructions
  const RepairResult rr = repair(fr.gamma);
  CHECK(kindsOf(rr) ==
        std::vector<std::string>{"dual-parallel", "dual-parallel"});
  CHECK(rr.steps[0].vertices == 18);
  CHECK(rr.steps[0].edges == 28);
  CHECK(rr.steps[0].faces == 12);
  const Counts c = countsOf(rr.map);
  CHECK(c.v == 24);
  CHECK(c.e == 39);
  CHECK(c.f == 17);
  CHECK(satisfiesSS(rr.map));
  checkTraceBookkeeping(rr);

  const FaceFrame frame = frameAt(rr.map, rr.map.mark("e1"));
  CHECK(formatCandidate(zMonodromy(rr.map, frame)) == text);
}

TEST_CASE("every k=3 candidate realizes through repair", "[simplify]") {
  int total = 0;
  enumerateCandidates(3, [&](const ZPerm& sigma) {
    ++total;
    const PlanarBuild b = assembleQuadMap(sigma);
    const FramedRadial fr = blackRadial(b);
    const RepairResult rr = repair(fr.gamma);
    REQUIRE(satisfiesSS(rr.map));
    for (const auto& s : rr.steps) REQUIRE(s.monodromy_ok);
    const FaceFrame frame = frameAt(rr.map, rr.map.mark("e1"));
    REQUIRE(zMonodromy(rr.map, frame) == sigma);
  });
  CHECK(total == 15);
}

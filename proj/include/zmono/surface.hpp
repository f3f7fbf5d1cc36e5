#pragma once

// Realization of candidates on closed surfaces other than the sphere.  The
// planar realization is threaded through one edge of its quadmap with a
// three-ring pattern (ten crossings, hard-coded below); the pattern creates
// a triangular face T in the black radial whose zigzags never meet the
// protected face, and a base triangulation of the target surface is then
// attached by connected sum at T.  Each step is verified on the spot.

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zmono/builders.hpp"
#include "zmono/core.hpp"
#include "zmono/medial.hpp"
#include "zmono/planar.hpp"
#include "zmono/rotation.hpp"
#include "zmono/simplify.hpp"
#include "zmono/violations.hpp"

namespace zmono {

// ---------------------------------------------------------------------------
// Surface vocabulary: sphere | genus:g | cross:h.

struct SurfaceSpec {
  enum class Kind { Sphere, Genus, Cross };
  Kind kind = Kind::Sphere;
  std::uint32_t n = 0;  // g or h; 0 for the sphere

  int eulerCharacteristic() const {
    switch (kind) {
      case Kind::Sphere: return 2;
      case Kind::Genus: return 2 - 2 * static_cast<int>(n);
      case Kind::Cross: return 2 - static_cast<int>(n);
    }
    return 2;
  }
  bool orientable() const { return kind != Kind::Cross; }
  std::string text() const {
    switch (kind) {
      case Kind::Sphere: return "sphere";
      case Kind::Genus: return "genus:" + std::to_string(n);
      case Kind::Cross: return "cross:" + std::to_string(n);
    }
    return "sphere";
  }

  static SurfaceSpec parse(const std::string& text) {
    if (text == "sphere") return {};
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
      const std::string head = text.substr(0, colon);
      const std::string tail = text.substr(colon + 1);
      if ((head == "genus" || head == "cross") && !tail.empty() &&
          tail.find_first_not_of("0123456789") == std::string::npos &&
          tail.size() <= 6) {
        const auto n = static_cast<std::uint32_t>(std::stoul(tail));
        if (head == "genus") return n == 0 ? SurfaceSpec{} : SurfaceSpec{Kind::Genus, n};
        if (n > 0) return SurfaceSpec{Kind::Cross, n};
      }
    }
    throw Error(Err::SyntaxError,
                "surface '" + text + "' is not sphere, genus:g, or cross:h with h >= 1");
  }
};

// ---------------------------------------------------------------------------
// Quadmaps: a 4-regular map with its chess coloring.  Marks live on the
// underlying map and always sit on flags of black faces, so they survive
// extraction of the black radial.

struct MarkedQuadMap {
  FlagMap g;
  std::vector<signed char> colors;  // face id -> color
  signed char black = 0;            // color class whose radial is the working map
};

/// Medial quadmap of a map.  Black faces are the faces of the medial that
/// correspond to vertices of m, so the black radial returns m itself, and
/// every mark of m transports to its black-side medial flag.
inline MarkedQuadMap quadMap(const FlagMap& m) {
  FlagMap g = medial(m);
  std::vector<signed char> colors = chessColoring(g);
  const Cells c = cells(g);
  const signed char black = colors[c.face_of[1]];  // flag 2*0+1 sits on a vertex-class face
  for (const auto& [name, f] : m.marks()) g.setMark(name, 2 * f + 1);
  return MarkedQuadMap{std::move(g), std::move(colors), black};
}

/// Black radial of a quadmap, with the marks carried back down.
inline FlagMap markedRadial(const MarkedQuadMap& q) {
  RadialMap rad = extractRadial(q.g, q.colors, q.black);
  FlagMap out = std::move(rad.map);
  for (const auto& [name, f] : q.g.marks()) {
    if (rad.from_host[f] == kNoFlag)
      throw Error(Err::BadMark, "mark '" + name +
                  "' sits on a white face and cannot survive black extraction");
    out.setMark(name, rad.from_host[f]);
  }
  return out;
}

namespace detail {

/// White face id of edge e, or kNoFlag if e is out of range.
inline std::uint32_t whiteFaceOf(const MarkedQuadMap& q, const Cells& c,
                                 std::uint32_t e) {
  if (e >= c.edgeCount()) return kNoFlag;
  const Flag r = c.edge_rep[e];
  for (Flag f : {r, q.g.s0(r), q.g.s2(r), q.g.s0(q.g.s2(r))})
    if (q.colors[c.face_of[f]] != q.black) return c.face_of[f];
  return kNoFlag;
}

}  // namespace detail

/// Smallest edge id whose white face differs from the white face of the
/// protected face (mark "face_F"), i.e. the first edge through which the
/// ring pattern may be threaded.
inline std::uint32_t lowestEligibleEdge(const MarkedQuadMap& q) {
  const Cells c = cells(q.g);
  const std::uint32_t f_face = c.face_of[q.g.s2(q.g.mark("face_F"))];
  for (std::uint32_t e = 0; e < c.edgeCount(); ++e)
    if (detail::whiteFaceOf(q, c, e) != f_face) return e;
  throw Error(Err::NoEligibleEdge,
              "every edge borders the protected face's white side");
}

/// Threads the three-ring pattern through edge e of the quadmap.  The edge
/// must not border the protected face's white side.  Ten crossings appear:
/// four where the rerouted edge pierces the rings and six between rings,
/// two per ring pair, one near the middle of the pattern and one outside.
/// The middle of the pattern is a white triangular face whose black-side
/// flag is marked "T"; (V,E,F) grows by (10,20,10) and the chess coloring
/// extends the old one.
inline MarkedQuadMap borromeanAugment(const MarkedQuadMap& q, std::uint32_t e) {
  const FlagMap& m = q.g;
  const Cells c = cells(m);
  const std::uint32_t f_face = c.face_of[m.s2(m.mark("face_F"))];
  if (e >= c.edgeCount() || detail::whiteFaceOf(q, c, e) == f_face)
    throw Error(Err::NoEligibleEdge,
                "edge is out of range or borders the protected face's white side", e);

  HostedMap h = fromFlagMap(m);
  struct MarkPos {
    std::string name;
    Dart dart;
    std::uint8_t bit;
    std::uint32_t at;
  };
  std::vector<MarkPos> positions;
  for (const auto& [name, flag] : m.marks())
    positions.push_back(
        {name, h.dart_of[flag], h.bit_of[flag], h.rs.origin(h.dart_of[flag])});

  // Reference-side dart of e whose face is black, so the side of the pattern
  // holding the middle triangle opens into the white face.
  Dart d = kNoFlag;
  {
    const Flag r = c.edge_rep[e];
    for (Flag f : {r, m.s0(r), m.s2(r), m.s0(m.s2(r))})
      if (h.bit_of[f] == 0 && q.colors[c.face_of[f]] == q.black) d = h.dart_of[f];
  }
  RotationSystem& rs = h.rs;
  const Dart dpp = RotationSystem::twin(d);
  const std::uint32_t u = rs.origin(d);
  const std::uint32_t v = rs.origin(dpp);

  // Crossings: vq1..vq4 along the rerouted edge (rings 1,3,1,3 in that
  // order), inner and outer crossings per ring pair.
  const std::uint32_t vq1 = rs.addVertex();
  const std::uint32_t vq2 = rs.addVertex();
  const std::uint32_t vq3 = rs.addVertex();
  const std::uint32_t vq4 = rs.addVertex();
  const std::uint32_t p12i = rs.addVertex();
  const std::uint32_t p12o = rs.addVertex();
  const std::uint32_t p13i = rs.addVertex();
  const std::uint32_t p13o = rs.addVertex();
  const std::uint32_t p23i = rs.addVertex();
  const std::uint32_t p23o = rs.addVertex();

  // Segments of the rerouted edge and the arcs of the three rings.
  const Dart s0d = rs.addEdge(u, vq1);
  const Dart s1d = rs.addEdge(vq1, vq2);
  const Dart s2d = rs.addEdge(vq2, vq3);
  const Dart s3d = rs.addEdge(vq3, vq4);
  const Dart s4d = rs.addEdge(vq4, v);
  const Dart b1a = rs.addEdge(p12i, p13i);  // ring 1, middle triangle side
  const Dart b1b = rs.addEdge(p13i, p12o);
  const Dart b1c = rs.addEdge(p12o, vq1);
  const Dart b1d = rs.addEdge(vq1, p13o);
  const Dart b1e = rs.addEdge(p13o, vq3);
  const Dart b1f = rs.addEdge(vq3, p12i);
  const Dart b2a = rs.addEdge(p12o, p23i);  // ring 2
  const Dart b2b = rs.addEdge(p23i, p12i);  // middle triangle side
  const Dart b2c = rs.addEdge(p12i, p23o);
  const Dart b2d = rs.addEdge(p23o, p12o);
  const Dart b3a = rs.addEdge(p23o, p13i);  // ring 3
  const Dart b3b = rs.addEdge(p13i, p23i);  // middle triangle side
  const Dart b3c = rs.addEdge(p23i, vq2);
  const Dart b3d = rs.addEdge(vq2, p13o);
  const Dart b3e = rs.addEdge(p13o, vq4);
  const Dart b3f = rs.addEdge(vq4, p23o);

  const auto T = RotationSystem::twin;
  rs.replaceDartWith(d, {s0d});
  rs.replaceDartWith(dpp, {T(s4d)});
  rs.setRotation(vq1, {T(b1c), T(s0d), b1d, s1d});
  rs.setRotation(vq2, {T(b3c), T(s1d), b3d, s2d});
  rs.setRotation(vq3, {s3d, b1f, T(s2d), T(b1e)});
  rs.setRotation(vq4, {s4d, b3f, T(s3d), T(b3e)});
  rs.setRotation(p12i, {b2c, b1a, T(b2b), T(b1f)});
  rs.setRotation(p12o, {T(b1b), T(b2d), b1c, b2a});
  rs.setRotation(p13i, {T(b3a), b1b, b3b, T(b1a)});
  rs.setRotation(p13o, {b1e, T(b3d), T(b1d), b3e});
  rs.setRotation(p23i, {T(b3b), T(b2a), b3c, b2b});
  rs.setRotation(p23o, {b2d, b3a, T(b2c), T(b3f)});

  const Compaction comp = rs.compact();
  FlagMap out = toFlagMap(rs);
  for (auto& pos : positions) {
    Dart pd = pos.dart;
    if (comp.dart_map[pd] == kNoFlag) {
      if (pos.at >= comp.vertex_map.size() || comp.vertex_map[pos.at] == kNoFlag)
        continue;
      pd = kNoFlag;
      for (Dart cand = 0; cand < rs.dartLimit() && pd == kNoFlag; ++cand)
        if (rs.origin(cand) == comp.vertex_map[pos.at]) pd = cand;
      if (pd == kNoFlag) continue;
      out.setMark(pos.name, 2 * pd + pos.bit);
    } else {
      out.setMark(pos.name, 2 * comp.dart_map[pd] + pos.bit);
    }
  }
  std::vector<signed char> colors2 = chessColoring(out);
  const Cells c2 = cells(out);
  signed char black2;
  {
    Flag ref = 0;
    while (c.edge_of[ref] == e) ++ref;
    const Flag ref_new = 2 * comp.dart_map[h.dart_of[ref]] + h.bit_of[ref];
    black2 = colors2[c2.face_of[ref_new]];
    if (q.colors[c.face_of[ref]] != q.black)
      black2 = static_cast<signed char>(1 - black2);
  }
  // The middle triangle borders arc b1a; the mark sits on the black flag
  // across from it, the handle that survives radial extraction.
  {
    Flag tflag = 2 * comp.dart_map[b1a];
    if (colors2[c2.face_of[tflag]] != black2) tflag = out.s2(tflag);
    out.setMark("T", tflag);
  }

  if (c2.vertexCount() != c.vertexCount() + 10 ||
      c2.edgeCount() != c.edgeCount() + 20 ||
      c2.faceCount() != c.faceCount() + 10)
    throw Error(Err::PatchContractViolation,
                "ring pattern changed the cell counts unexpectedly", e);
  const Flag tmark = out.mark("T");
  if (colors2[c2.face_of[tmark]] != black2)
    throw Error(Err::PatchContractViolation,
                "middle triangle of the ring pattern landed on the black side", e);
  {
    const std::vector<Flag> tri = detail::faceOrbitFlags(out, out.s2(tmark));
    std::vector<std::uint32_t> got;
    for (Flag f : tri) got.push_back(c2.vertex_of[f]);
    std::sort(got.begin(), got.end());
    got.erase(std::unique(got.begin(), got.end()), got.end());
    // Cell ids of the inner crossings, read off darts based at them.
    std::vector<std::uint32_t> want = {c2.vertex_of[2 * comp.dart_map[b1a]],
                                       c2.vertex_of[2 * comp.dart_map[b3b]],
                                       c2.vertex_of[2 * comp.dart_map[b2b]]};
    std::sort(want.begin(), want.end());
    if (tri.size() != 6 || got != want)
      throw Error(Err::PatchContractViolation,
                  "middle face of the ring pattern is not the inner triangle", e);
  }
  return MarkedQuadMap{std::move(out), std::move(colors2), black2};
}

/// Threads the ring pattern through the lowest eligible edge.
inline MarkedQuadMap borromeanAugment(const MarkedQuadMap& q) {
  return borromeanAugment(q, lowestEligibleEdge(q));
}

// ---------------------------------------------------------------------------
// Connected sum along triangular faces.

struct SumResult {
  FlagMap map;
  std::vector<Flag> from_a;  // old flag -> new flag, kNoFlag for the removed faces
  std::vector<Flag> from_b;
};

namespace detail {

/// The six flags of a triangular face in boundary-walk order, starting at
/// base: t0, s0 t0, s1 s0 t0, ...  Throws FaceNotTriangular otherwise.
inline std::array<Flag, 6> triangleWalk(const FlagMap& m, Flag base) {
  std::array<Flag, 6> walk{};
  Flag f = base;
  for (int i = 0; i < 6; ++i) {
    walk[static_cast<std::size_t>(i)] = f;
    f = (i % 2 == 0) ? m.s0(f) : m.s1(f);
  }
  if (f != base || std::set<Flag>(walk.begin(), walk.end()).size() != 6)
    throw Error(Err::FaceNotTriangular,
                "face at flag " + std::to_string(base) + " is not a triangle");
  return walk;
}

}  // namespace detail

/// Glue two maps along triangular faces: the faces at ta and tb are removed
/// and their boundaries identified vertex for vertex.  The six gluings are
/// the three rotations (0..2) and three reflections (3..5) of the boundary
/// correspondence anchored at ta and tb.  Cell counts combine as
/// (V1+V2-3, E1+E2-3, F1+F2-2), so Euler characteristics add minus 2.
inline SumResult connectedSum(const FlagMap& a, Flag ta, const FlagMap& b,
                              Flag tb, int gluing = 0) {
  if (gluing < 0 || gluing > 5)
    throw Error(Err::SyntaxError, "gluing must be one of 0..5");
  const std::array<Flag, 6> wa = detail::triangleWalk(a, ta);
  const std::array<Flag, 6> wb = detail::triangleWalk(b, tb);
  auto image = [&](int i) {
    return gluing < 3 ? (2 * gluing + i) % 6 : (2 * (gluing - 3) + 1 - i + 6) % 6;
  };

  std::vector<Flag> from_a(a.flagCount(), kNoFlag);
  std::vector<Flag> from_b(b.flagCount(), kNoFlag);
  for (Flag f : wa) from_a[f] = kNoFlag - 1;  // tag the removed orbit
  for (Flag f : wb) from_b[f] = kNoFlag - 1;
  std::uint32_t next = 0;
  for (Flag f = 0; f < a.flagCount(); ++f)
    if (from_a[f] != kNoFlag - 1) from_a[f] = next++;
    else from_a[f] = kNoFlag;
  for (Flag f = 0; f < b.flagCount(); ++f)
    if (from_b[f] != kNoFlag - 1) from_b[f] = next++;
    else from_b[f] = kNoFlag;

  std::vector<Flag> s0(next), s1(next), s2(next);
  auto copySide = [&](const FlagMap& src, const std::vector<Flag>& map_of) {
    for (Flag f = 0; f < src.flagCount(); ++f) {
      if (map_of[f] == kNoFlag) continue;
      s0[map_of[f]] = map_of[src.s0(f)];
      s1[map_of[f]] = map_of[src.s1(f)];
      s2[map_of[f]] = map_of[src.s2(f)];  // boundary flags fixed up below
    }
  };
  copySide(a, from_a);
  copySide(b, from_b);
  for (int i = 0; i < 6; ++i) {
    const Flag xa = a.s2(wa[static_cast<std::size_t>(i)]);
    const Flag xb = b.s2(wb[static_cast<std::size_t>(image(i))]);
    if (from_a[xa] == kNoFlag || from_b[xb] == kNoFlag)
      throw Error(Err::InternalDegeneracy,
                  "a gluing triangle shares an edge with itself");
    s2[from_a[xa]] = from_b[xb];
    s2[from_b[xb]] = from_a[xa];
  }
  return SumResult{FlagMap(next, std::move(s0), std::move(s1), std::move(s2)),
                   std::move(from_a), std::move(from_b)};
}

// ---------------------------------------------------------------------------
// Base surfaces and the full pipeline.

/// Triangulated base of the target surface with one triangular face marked
/// "T": K7 on the torus or K6 on the projective plane, extended to higher
/// genus or crosscap number by repeated connected sums of further copies.
inline FlagMap baseMap(const SurfaceSpec& spec) {
  if (spec.kind == SurfaceSpec::Kind::Sphere)
    throw Error(Err::InternalDegeneracy, "the sphere needs no base map");
  const FlagMap piece =
      spec.kind == SurfaceSpec::Kind::Genus ? k7Torus() : k6Projective();
  const Cells pc = cells(piece);
  const Flag pa = pc.face_rep[0];  // consumed when a copy is spliced on
  const Flag pb = pc.face_rep[1];  // survives as the next attachment triangle
  FlagMap acc = piece;
  Flag t = pb;
  for (std::uint32_t i = 1; i < spec.n; ++i) {
    SumResult s = connectedSum(acc, t, piece, pa, 0);
    if (!satisfiesSS(s.map))
      throw Error(Err::CompositionSSFailure,
                  "base copy " + std::to_string(i + 1) +
                  " broke two-sided simplicity");
    t = s.from_b[pb];
    acc = std::move(s.map);
  }
  acc.setMark("T", t);
  return acc;
}

struct SurfaceRealization {
  FlagMap map;
  FaceFrame frame;
  SurfaceSpec spec;
  std::vector<RepairStep> steps;
};

/// Realize sigma as the z-monodromy of the protected face on the requested
/// surface.  The sphere is the planar pipeline; any other surface threads
/// the ring pattern through the realization's quadmap and glues the base
/// triangulation at the resulting triangle, checking two-sided simplicity,
/// the Euler characteristic, orientability, and the z-monodromy itself.
inline SurfaceRealization realizeOnSurface(const ZPerm& sigma, const SurfaceSpec& spec) {
  Realization planar = realizePlanar(sigma);
  if (spec.kind == SurfaceSpec::Kind::Sphere)
    return SurfaceRealization{std::move(planar.gamma), planar.frame, spec,
                              std::move(planar.steps)};

  std::vector<RepairStep> steps = std::move(planar.steps);
  MarkedQuadMap q = quadMap(planar.gamma);
  const std::uint32_t e = lowestEligibleEdge(q);
  FlagMap rad = markedRadial(borromeanAugment(q, e));
  {
    const Cells rc = cells(rad);
    const bool ok = zMonodromy(rad, frameAt(rad, rad.mark("e1"))) == sigma;
    steps.push_back({static_cast<int>(steps.size()) + 1, "borromean-augment", e,
                     rc.vertexCount(), rc.edgeCount(), rc.faceCount(), ok});
    if (!ok)
      throw Error(Err::VerificationMismatch,
                  "ring pattern disturbed the protected face's z-monodromy");
  }

  const FlagMap base = baseMap(spec);
  SumResult s = connectedSum(rad, rad.mark("T"), base, base.mark("T"), 0);
  FlagMap out = std::move(s.map);
  for (const auto& [name, f] : rad.marks()) {
    if (name == "T") continue;
    out.setMark(name, s.from_a[f]);
  }
  if (!satisfiesSS(out))
    throw Error(Err::CompositionSSFailure,
                "gluing the base surface broke two-sided simplicity");
  if (eulerCharacteristic(out) != spec.eulerCharacteristic() ||
      isOrientable(out) != spec.orientable())
    throw Error(Err::VerificationMismatch,
                "glued map does not triangulate " + spec.text());

  const FaceFrame frame = frameAt(out, out.mark("e1"));
  const ZPerm got = zMonodromy(out, frame);
  {
    const Cells oc = cells(out);
    steps.push_back({static_cast<int>(steps.size()) + 1, "connected-sum", 0,
                     oc.vertexCount(), oc.edgeCount(), oc.faceCount(), got == sigma});
  }
  if (!(got == sigma))
    throw Error(Err::VerificationMismatch,
                "realized z-monodromy " + formatCandidate(got) +
                " differs from the candidate " + formatCandidate(sigma));
  return SurfaceRealization{std::move(out), frame, spec, std::move(steps)};
}

}  // namespace zmono

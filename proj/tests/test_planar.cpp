#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "zmono/builders.hpp"
#include "zmono/planar.hpp"
#include "zmono/rng.hpp"

using namespace zmono;

namespace {

std::vector<std::size_t> circuitLengths(const FlagMap& g) {
  std::vector<std::size_t> lens;
  for (const auto& c : centralCircuits(g)) lens.push_back(c.vertices.size());
  std::sort(lens.begin(), lens.end());
  return lens;
}

long loopEdges(const FlagMap& g) {
  const Cells c = cells(g);
  std::vector<std::set<std::uint32_t>> ends(c.edgeCount());
  for (Flag f = 0; f < g.flagCount(); ++f) ends[c.edge_of[f]].insert(c.vertex_of[f]);
  long n = 0;
  for (const auto& e : ends)
    if (e.size() == 1) ++n;
  return n;
}

ZPerm realizedMonodromy(const ZPerm& sigma) {
  const PlanarBuild b = assembleQuadMap(sigma);
  const FramedRadial fr = blackRadial(b);
  return zMonodromyUnchecked(fr.gamma, fr.frame);
}

}  // namespace

TEST_CASE("six-gon sample assembles with the pinned cell counts") {
  const ZPerm sigma = parseCandidate("(1,-6,-4,2)(3,-5)(5,-3)(-2,4,6,-1)", 6);
  const PlanarBuild b = assembleQuadMap(sigma);
  const Cells c = cells(b.g);
  REQUIRE(c.vertexCount() == 17);
  REQUIRE(c.edgeCount() == 34);
  REQUIRE(c.faceCount() == 19);
  REQUIRE(eulerCharacteristic(b.g) == 2);
  REQUIRE(isOrientable(b.g));
  // one circuit per closed curve; a curve through m chords with x crossings
  // on them runs through 4m + x vertices
  REQUIRE(circuitLengths(b.g) == std::vector<std::size_t>{6, 12, 16});
  REQUIRE(b.curves.size() == 3);
}

TEST_CASE("identity diagram carries three mutually crossing chords") {
  const PlanarBuild b = assembleQuadMap(zpIdentity(3));
  const Cells c = cells(b.g);
  REQUIRE(c.vertexCount() == 9);
  REQUIRE(c.edgeCount() == 18);
  REQUIRE(c.faceCount() == 11);
  // a single closed curve through all three chords and all six chord-side
  // crossing passages
  REQUIRE(circuitLengths(b.g) == std::vector<std::size_t>{18});

  const FramedRadial fr = blackRadial(b);
  const Cells cg = cells(fr.gamma);
  REQUIRE(cg.vertexCount() == 7);
  REQUIRE(cg.edgeCount() == 9);
  REQUIRE(cg.faceCount() == 4);
  // the raw radial usually still needs repair before it is simple
  REQUIRE_FALSE(satisfiesSS(fr.gamma));
  REQUIRE(formatCandidate(zMonodromyUnchecked(fr.gamma, fr.frame)) == "");
}

TEST_CASE("face-rotation diagram hangs a loop on every hub") {
  const ZPerm sigma = rotationDF(6);
  const PlanarBuild b = assembleQuadMap(sigma);
  const Cells c = cells(b.g);
  REQUIRE(c.vertexCount() == 12);
  REQUIRE(c.edgeCount() == 24);
  REQUIRE(loopEdges(b.g) == 6);
  REQUIRE(circuitLengths(b.g) == std::vector<std::size_t>{12, 12});
  REQUIRE(b.curves.size() == 2);
}

TEST_CASE("frame marks land on the boundary edges of the radial") {
  const ZPerm sigma = parseCandidate("(1,-6,-4,2)(3,-5)(5,-3)(-2,4,6,-1)", 6);
  const FramedRadial fr = blackRadial(assembleQuadMap(sigma));
  const auto heads = frameHeads(fr.gamma, fr.frame);
  REQUIRE(fr.gamma.mark("e1") == heads[0]);
  REQUIRE(fr.gamma.mark("face_F") == heads[0]);
  for (int j = 1; j <= 6; ++j)
    REQUIRE(fr.gamma.mark("p" + std::to_string(j)) == heads[static_cast<std::size_t>(j - 1)]);
  // corner marks sit on the frame's head vertices but off the framed face
  const Cells c = cells(fr.gamma);
  const std::uint32_t face_f = c.face_of[heads[0]];
  for (int j = 1; j <= 6; ++j) {
    const Flag m = fr.gamma.mark("a" + std::to_string(j) + std::to_string(j % 6 + 1));
    REQUIRE(c.vertex_of[m] == c.vertex_of[heads[static_cast<std::size_t>(j - 1)]]);
    REQUIRE(c.face_of[m] != face_f);
  }
  REQUIRE_FALSE(fr.gamma.hasMark("outer_face"));
}

TEST_CASE("assembled monodromy reproduces the permutation it came from") {
  // the full loop: candidate -> chords -> plane graph -> radial -> monodromy
  const ZPerm example = parseCandidate("(1,-6,-4,2)(3,-5)(5,-3)(-2,4,6,-1)", 6);
  REQUIRE(realizedMonodromy(example).img == example.img);

  for (int k = 3; k <= 5; ++k) {
    const ZPerm id = zpIdentity(k);
    REQUIRE(realizedMonodromy(id).img == id.img);
    const ZPerm rot = rotationDF(k);
    REQUIRE(realizedMonodromy(rot).img == rot.img);
  }

  for (const ZPerm& sigma : allCandidates(3)) {
    const ZPerm m = realizedMonodromy(sigma);
    INFO("candidate " << formatCandidate(sigma) << " realized " << formatCandidate(m));
    REQUIRE(m.img == sigma.img);
  }

  SplitMix64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    for (int k : {4, 5, 6}) {
      const ZPerm sigma = randomCandidate(k, rng);
      const ZPerm m = realizedMonodromy(sigma);
      INFO("candidate " << formatCandidate(sigma) << " realized " << formatCandidate(m));
      REQUIRE(m.img == sigma.img);
    }
  }
}

TEST_CASE("every four-gon candidate assembles and realizes itself") {
  for (const ZPerm& sigma : allCandidates(4)) {
    const ZPerm m = realizedMonodromy(sigma);
    INFO("candidate " << formatCandidate(sigma) << " realized " << formatCandidate(m));
    REQUIRE(m.img == sigma.img);
  }
}

TEST_CASE("realizePlanar returns a verified two-sided-simple map") {
  const ZPerm sigma = parseCandidate("(1,-6,-4,2)(3,-5)(5,-3)(-2,4,6,-1)", 6);
  const Realization r = realizePlanar(sigma);
  REQUIRE(satisfiesSS(r.gamma));
  REQUIRE(r.frame.k == 6);
  REQUIRE(zMonodromy(r.gamma, r.frame) == sigma);
  REQUIRE(r.steps.size() == 2);
  const Cells c = cells(r.gamma);
  REQUIRE(c.vertexCount() == 24);
  REQUIRE(c.edgeCount() == 39);
  REQUIRE(c.faceCount() == 17);

  // a candidate whose raw radial needs the full repair ladder still verifies
  const ZPerm rot = rotationDF(4);
  const Realization rr = realizePlanar(rot);
  REQUIRE(satisfiesSS(rr.gamma));
  REQUIRE(zMonodromy(rr.gamma, rr.frame) == rot);
  REQUIRE(!rr.steps.empty());
}

TEST_CASE("assembly is deterministic") {
  const ZPerm sigma = parseCandidate("(1,-6,-4,2)(3,-5)(5,-3)(-2,4,6,-1)", 6);
  const PlanarBuild a = assembleQuadMap(sigma);
  const PlanarBuild b = assembleQuadMap(sigma);
  REQUIRE(a.g.flagCount() == b.g.flagCount());
  for (Flag f = 0; f < a.g.flagCount(); ++f)
    for (int i : {0, 1, 2}) REQUIRE(a.g.s(i, f) == b.g.s(i, f));
  REQUIRE(a.g.marks() == b.g.marks());
  REQUIRE(a.arrangement.attempt == b.arrangement.attempt);
  for (std::size_t i = 0; i < a.vertex_point.size(); ++i) {
    REQUIRE(a.vertex_point[i].x == b.vertex_point[i].x);
    REQUIRE(a.vertex_point[i].y == b.vertex_point[i].y);
  }
}

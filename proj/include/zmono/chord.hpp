#pragma once

// Chord diagrams on the outer circle of the planar construction.  The 2k
// boundary slots run clockwise as r_1, l_k, r_2, l_1, ..., r_k, l_(k-1); a
// candidate permutation turns into a perfect matching of the slots, whose
// chords are then drawn as straight segments between exact rational points
// on the unit circle.  Crossings, their order along each chord, and the
// closed curves formed with the boundary arcs all come out of this file.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "zmono/core.hpp"
#include "zmono/monodromy.hpp"
#include "zmono/rng.hpp"

namespace zmono {

inline int slotOfR(int k, int i) {
  (void)k;
  return 2 * (i - 1);
}
inline int slotOfL(int k, int i) { return (2 * i + 1) % (2 * k); }

struct SlotRef {
  bool is_l = false;
  int index = 0;  // 1-based
};

inline SlotRef slotRef(int k, int slot) {
  if (slot % 2 == 0) return SlotRef{false, slot / 2 + 1};
  const int m = (slot - 1) / 2;
  return SlotRef{true, m == 0 ? k : m};
}

inline std::string slotLabel(int k, int slot) {
  const SlotRef r = slotRef(k, slot);
  return (r.is_l ? "l" : "r") + std::to_string(r.index);
}

/// Perfect matching of the 2k slots.
struct ChordMatching {
  int k = 0;
  std::vector<int> partner;  // slot -> slot, fixed-point-free involution
};

/// Matching rules, applied to sigma(i) = j over every signed symbol i:
/// both positive joins l_i to r_j, both negative joins r_(-i) to l_(-j),
/// positive to negative joins l_i to l_(-j), negative to positive joins
/// r_(-i) to r_j.  The mirror rule makes the two passes over each chord
/// agree; any disagreement or self-pairing is rejected.
inline ChordMatching matchingFromSigma(const ZPerm& sigma) {
  checkAdmissible(sigma);
  const int k = sigma.k;
  ChordMatching cm;
  cm.k = k;
  cm.partner.assign(2 * static_cast<std::size_t>(k), -1);
  const auto join = [&](int a, int b) {
    if (a == b)
      throw Error(Err::InternalDegeneracy, "chord endpoint paired with itself", a);
    for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      if (cm.partner[x] != -1 && cm.partner[x] != y)
        throw Error(Err::InternalDegeneracy, "conflicting chord assignments at slot", x);
      cm.partner[x] = y;
    }
  };
  for (int idx = 0; idx < 2 * k; ++idx) {
    const int i = symFromIndex(k, idx);
    const int j = zpApply(sigma, i);
    if (i > 0 && j > 0) join(slotOfL(k, i), slotOfR(k, j));
    if (i < 0 && j < 0) join(slotOfR(k, -i), slotOfL(k, -j));
    if (i > 0 && j < 0) join(slotOfL(k, i), slotOfL(k, -j));
    if (i < 0 && j > 0) join(slotOfR(k, -i), slotOfR(k, j));
  }
  for (int s = 0; s < 2 * k; ++s)
    if (cm.partner[s] == -1)
      throw Error(Err::InternalDegeneracy, "slot left unmatched", s);
  return cm;
}

/// Chords as slot pairs (lo, hi), ordered by their lower slot.
inline std::vector<std::pair<int, int>> chordList(const ChordMatching& cm) {
  std::vector<std::pair<int, int>> chords;
  for (int s = 0; s < 2 * cm.k; ++s)
    if (s < cm.partner[s]) chords.push_back({s, cm.partner[s]});
  return chords;
}

/// Closed curves of the diagram: alternate chords with the boundary arcs
/// joining r_i to l_(i+1).  Each curve is the cyclic slot sequence starting
/// at its smallest slot, leaving along its chord; curves are ordered by that
/// smallest slot.
inline std::vector<std::vector<int>> closedCurves(const ChordMatching& cm) {
  const int k = cm.k;
  std::vector<int> arc(2 * static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) {
    const int a = slotOfR(k, i);
    const int b = slotOfL(k, i % k + 1);
    arc[a] = b;
    arc[b] = a;
  }
  std::vector<char> used(2 * static_cast<std::size_t>(k), 0);
  std::vector<std::vector<int>> curves;
  for (int start = 0; start < 2 * k; ++start) {
    if (used[start]) continue;
    std::vector<int> cyc;
    int s = start;
    bool chord_next = true;
    do {
      used[s] = 1;
      cyc.push_back(s);
      s = chord_next ? cm.partner[s] : arc[s];
      chord_next = !chord_next;
    } while (s != start);
    curves.push_back(std::move(cyc));
  }
  return curves;
}

/// Number of interleaving pairs among chords given by arbitrary circular
/// positions (each chord a pair of distinct positions; all 2n distinct).
/// Two chords interleave when exactly one endpoint of the second lies on the
/// arc strictly between the endpoints of the first.
inline long interleavingPairs(const std::vector<std::pair<int, int>>& chords) {
  const auto between = [](int a, int b, int x) {
    // strictly inside the arc from a to b going upward with wraparound
    return a < b ? (a < x && x < b) : (x > a || x < b);
  };
  long count = 0;
  for (std::size_t i = 0; i < chords.size(); ++i)
    for (std::size_t j = i + 1; j < chords.size(); ++j) {
      const bool c_in = between(chords[i].first, chords[i].second, chords[j].first);
      const bool d_in = between(chords[i].first, chords[i].second, chords[j].second);
      if (c_in != d_in) ++count;
    }
  return count;
}

inline long crossingCount(const ChordMatching& cm) {
  return interleavingPairs(chordList(cm));
}

// ---------------------------------------------------------------------------
// Exact straight-line arrangement.

struct ExactPoint {
  mpq_class x, y;
  bool operator==(const ExactPoint& o) const { return x == o.x && y == o.y; }
};

/// Point on the unit circle with tangent-half-angle parameter t.
inline ExactPoint circlePoint(const mpq_class& t) {
  const mpq_class t2 = t * t;
  ExactPoint p;
  p.x = (1 - t2) / (1 + t2);
  p.y = 2 * t / (1 + t2);
  return p;
}

struct ChordArrangement {
  int k = 0;
  int attempt = 0;                             // perturbation round that succeeded
  std::vector<ExactPoint> slot_point;          // per slot
  std::vector<std::pair<int, int>> chords;     // chordList order
  struct Crossing {
    int chord_a = 0, chord_b = 0;  // indices into chords, a < b
    ExactPoint p;
  };
  std::vector<Crossing> crossings;             // discovery order: double loop over chords
  std::vector<std::vector<int>> along_chord;   // per chord: crossing ids, ordered from its lo slot
};

namespace detail {

// deterministic endpoint jitter for retry rounds, |value| < 1/4
inline mpq_class slotJitter(int attempt, int slot) {
  if (attempt == 0) return 0;
  SplitMix64 rng(static_cast<std::uint64_t>(attempt) * 1000003u +
                 static_cast<std::uint64_t>(slot));
  const unsigned long num = static_cast<unsigned long>(rng.next() & 0xffffffffu);
  mpq_class j(num, 1ul);
  j /= mpq_class(1ul << 31) * 8;  // < 2^32 / 2^34 = 1/4
  j.canonicalize();
  return j;
}

}  // namespace detail

/// Straight-line drawing of the chords with all slot points on the unit
/// circle, clockwise in slot order.  Retries with deterministically jittered
/// points until no three chords meet in a common point; crossings keep their
/// discovery order (stable across retries), and along_chord sorts them by
/// exact parameter along each chord.
inline ChordArrangement arrangeChords(const ChordMatching& cm) {
  const int k = cm.k;
  const int max_attempts = 32;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    ChordArrangement arr;
    arr.k = k;
    arr.attempt = attempt;
    for (int s = 0; s < 2 * k; ++s)
      arr.slot_point.push_back(circlePoint(-mpq_class(s) - detail::slotJitter(attempt, s)));
    arr.chords = chordList(cm);

    const auto cross2 = [](const mpq_class& ax, const mpq_class& ay, const mpq_class& bx,
                           const mpq_class& by) -> mpq_class { return ax * by - ay * bx; };
    bool clean = true;
    std::vector<std::vector<std::pair<mpq_class, int>>> params(arr.chords.size());
    for (std::size_t a = 0; a < arr.chords.size() && clean; ++a) {
      for (std::size_t b = a + 1; b < arr.chords.size() && clean; ++b) {
        const std::vector<std::pair<int, int>> pair_ab{arr.chords[a], arr.chords[b]};
        if (interleavingPairs(pair_ab) == 0) continue;
        const ExactPoint& p1 = arr.slot_point[arr.chords[a].first];
        const ExactPoint& p2 = arr.slot_point[arr.chords[a].second];
        const ExactPoint& q1 = arr.slot_point[arr.chords[b].first];
        const ExactPoint& q2 = arr.slot_point[arr.chords[b].second];
        const mpq_class denom = cross2(p2.x - p1.x, p2.y - p1.y, q2.x - q1.x, q2.y - q1.y);
        if (denom == 0)
          throw Error(Err::InternalDegeneracy, "interleaving chords came out parallel");
        const mpq_class s = cross2(q1.x - p1.x, q1.y - p1.y, q2.x - q1.x, q2.y - q1.y) / denom;
        const mpq_class u = cross2(q1.x - p1.x, q1.y - p1.y, p2.x - p1.x, p2.y - p1.y) / denom;
        ExactPoint pt;
        pt.x = p1.x + s * (p2.x - p1.x);
        pt.y = p1.y + s * (p2.y - p1.y);
        for (const auto& c : arr.crossings)
          if (c.p == pt) {  // three chords through one point: perturb and retry
            clean = false;
            break;
          }
        if (!clean) break;
        const int id = static_cast<int>(arr.crossings.size());
        arr.crossings.push_back({static_cast<int>(a), static_cast<int>(b), pt});
        params[a].push_back({s, id});
        params[b].push_back({u, id});
      }
    }
    if (!clean) continue;
    arr.along_chord.resize(arr.chords.size());
    for (std::size_t ch = 0; ch < arr.chords.size(); ++ch) {
      std::sort(params[ch].begin(), params[ch].end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      for (const auto& [t, id] : params[ch]) {
        (void)t;
        arr.along_chord[ch].push_back(id);
      }
    }
    return arr;
  }
  throw Error(Err::InternalDegeneracy,
              "no perturbation produced a simple chord arrangement");
}

}  // namespace zmono

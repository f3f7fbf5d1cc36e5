#pragma once

// Zigzags (left-right paths).  A traversal state is a single flag f, read
// as: the walk just crossed the edge of f, arriving at the vertex of f, and
// will turn next inside the face of f.  One zigzag step is
//
//   T(f) = s2(s0(s1(f)))
//
// (turn to the next edge in the face, cross it, switch to the other side).
// Orbits of T are the zigzags; conjugating by r(f) = s0(s2(f)) inverts T,
// so r maps each zigzag onto its reversal and zigzags come in reversal
// pairs.  With n flags (n = 4E) the orbit sizes over one representative per
// pair add up to 2E.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "zmono/core.hpp"
#include "zmono/violations.hpp"

namespace zmono {

inline Flag zigzagStep(const FlagMap& m, Flag f) { return m.s2(m.s0(m.s1(f))); }
inline Flag zigzagStepBack(const FlagMap& m, Flag f) { return m.s1(m.s0(m.s2(f))); }
inline Flag zigzagReversal(const FlagMap& m, Flag f) { return m.s0(m.s2(f)); }

struct ZigzagTrace {
  std::vector<std::vector<Flag>> orbits;   // each in T order, starting at its min flag
  std::vector<std::uint32_t> orbit_of;     // flag -> orbit index
  std::vector<std::uint32_t> reversal_of;  // orbit index -> reversed orbit index
  std::vector<std::uint32_t> pair_reps;    // min orbit index of each reversal pair
};

namespace detail {

inline ZigzagTrace traceZigzagOrbits(const FlagMap& m) {
  const Flag n = m.flagCount();
  ZigzagTrace z;
  z.orbit_of.assign(n, 0xffffffffu);
  for (Flag f = 0; f < n; ++f) {
    if (z.orbit_of[f] != 0xffffffffu) continue;
    const auto id = static_cast<std::uint32_t>(z.orbits.size());
    std::vector<Flag> orbit;
    Flag g = f;
    do {
      z.orbit_of[g] = id;
      orbit.push_back(g);
      g = zigzagStep(m, g);
    } while (g != f);
    z.orbits.push_back(std::move(orbit));
  }
  z.reversal_of.resize(z.orbits.size());
  for (std::uint32_t i = 0; i < z.orbits.size(); ++i)
    z.reversal_of[i] = z.orbit_of[zigzagReversal(m, z.orbits[i][0])];
  for (std::uint32_t i = 0; i < z.orbits.size(); ++i)
    if (i <= z.reversal_of[i]) z.pair_reps.push_back(i);
  return z;
}

}  // namespace detail

/// Traces all zigzags.  Requires an SS map (throws SSViolated otherwise).
inline ZigzagTrace traceZigzags(const FlagMap& m) {
  requireSS(m, "zigzag tracing");
  return detail::traceZigzagOrbits(m);
}

/// Edge ids visited by a zigzag orbit, in traversal order.
inline std::vector<std::uint32_t> zigzagEdges(const Cells& c,
                                              const std::vector<Flag>& orbit) {
  std::vector<std::uint32_t> e;
  e.reserve(orbit.size());
  for (Flag f : orbit) e.push_back(c.edge_of[f]);
  return e;
}

}  // namespace zmono

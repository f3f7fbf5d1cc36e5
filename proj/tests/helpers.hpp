#pragma once

// Shared test utilities: turning traced orbits into human-readable directed
// edge sequences and comparing cyclic sequences up to rotation and reversal.

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "zmono/core.hpp"

namespace testutil {

// Vertex labels recovered from marks: "v12" -> "12", other mark names kept
// verbatim; first (alphabetical) mark for a vertex wins, so "a" beats "v4".
inline std::vector<std::string> vertexLabels(const zmono::FlagMap& m,
                                             const zmono::Cells& c) {
  std::vector<std::string> lab(c.vertexCount());
  for (const auto& [name, flag] : m.marks()) {
    std::string l = name;
    if (l.size() > 1 && l[0] == 'v') l = l.substr(1);
    auto& slot = lab[c.vertex_of[flag]];
    if (slot.empty()) slot = l;
  }
  return lab;
}

// State f arrived at vertex(f) across edge(f): directed label "<from><to>".
inline std::vector<std::string> directedEdgeWords(const zmono::FlagMap& m,
                                                  const zmono::Cells& c,
                                                  const std::vector<zmono::Flag>& orbit) {
  const auto lab = vertexLabels(m, c);
  std::vector<std::string> words;
  words.reserve(orbit.size());
  for (zmono::Flag f : orbit)
    words.push_back(lab[c.vertex_of[m.s0(f)]] + lab[c.vertex_of[f]]);
  return words;
}

inline std::vector<std::string> minRotation(const std::vector<std::string>& s) {
  std::vector<std::string> best = s;
  std::vector<std::string> cur = s;
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    best = std::min(best, cur);
  }
  return best;
}

// The reversal of a directed closed walk: reverse the order and each word.
// Word reversal is by character, so callers must stick to fixtures whose
// vertex labels are single characters.
inline std::vector<std::string> flipReverse(std::vector<std::string> s) {
  std::reverse(s.begin(), s.end());
  for (auto& w : s) std::reverse(w.begin(), w.end());
  return s;
}

inline std::vector<std::string> canonicalCycle(const std::vector<std::string>& s) {
  return std::min(minRotation(s), minRotation(flipReverse(s)));
}

}  // namespace testutil

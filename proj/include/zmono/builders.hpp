#pragma once

// Construction of flag maps from face lists, plus the named fixtures used
// throughout the tests.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zmono/core.hpp"

namespace zmono {

/// Builds a flag map from its faces, each given as a cyclic list of vertex
/// labels.  Every unordered vertex pair read off consecutive labels must
/// occur exactly twice across all faces (the two sides of that edge).  Loops
/// (consecutive equal labels) and parallel edges are not expressible here;
/// build those through a rotation system instead.
///
/// Each vertex label v gets a mark "v<label>" at its smallest flag.
inline FlagMap mapFromFaces(const std::vector<std::vector<int>>& faces) {
  std::vector<Flag> off(faces.size(), 0);
  Flag slots = 0;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (faces[f].empty())
      throw Error(Err::SyntaxError, "face " + std::to_string(f) + " is empty");
    off[f] = slots;
    slots += static_cast<Flag>(faces[f].size());
  }
  const Flag n = 2 * slots;
  auto flag_id = [&](std::size_t f, std::size_t j, int t) {
    return 2 * (off[f] + static_cast<Flag>(j)) + static_cast<Flag>(t);
  };

  std::vector<Flag> s0(n), s1(n), s2(n, kNoFlag);
  std::map<std::pair<int, int>, std::vector<std::pair<std::size_t, std::size_t>>> sides;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& walk = faces[f];
    const std::size_t len = walk.size();
    for (std::size_t j = 0; j < len; ++j) {
      const std::size_t jn = (j + 1) % len;
      s0[flag_id(f, j, 0)] = flag_id(f, j, 1);
      s0[flag_id(f, j, 1)] = flag_id(f, j, 0);
      s1[flag_id(f, j, 1)] = flag_id(f, jn, 0);
      s1[flag_id(f, jn, 0)] = flag_id(f, j, 1);
      const int a = walk[j], b = walk[jn];
      if (a == b)
        throw Error(Err::SyntaxError,
                    "face " + std::to_string(f) + " repeats label " +
                    std::to_string(a) + " consecutively (loop edges are not "
                    "expressible from face lists)");
      sides[std::minmax(a, b)].push_back({f, j});
    }
  }
  for (const auto& [pair, at] : sides) {
    if (at.size() != 2)
      throw Error(Err::SyntaxError,
                  "edge {" + std::to_string(pair.first) + "," +
                  std::to_string(pair.second) + "} lies on " +
                  std::to_string(at.size()) + " face sides, expected 2");
    const auto [f1, j1] = at[0];
    const auto [f2, j2] = at[1];
    for (int t1 = 0; t1 < 2; ++t1) {
      const int vtx = faces[f1][(j1 + static_cast<std::size_t>(t1)) % faces[f1].size()];
      const int t2 = (faces[f2][j2] == vtx) ? 0 : 1;
      s2[flag_id(f1, j1, t1)] = flag_id(f2, j2, t2);
      s2[flag_id(f2, j2, t2)] = flag_id(f1, j1, t1);
    }
  }

  std::map<std::string, Flag> marks;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const std::size_t len = faces[f].size();
    for (std::size_t j = 0; j < len; ++j)
      for (int t = 0; t < 2; ++t) {
        const std::string name = "v" + std::to_string(faces[f][(j + static_cast<std::size_t>(t)) % len]);
        const Flag id = flag_id(f, j, t);
        auto it = marks.find(name);
        if (it == marks.end() || id < it->second) marks[name] = id;
      }
  }
  return FlagMap(n, std::move(s0), std::move(s1), std::move(s2), std::move(marks));
}

inline FlagMap tetrahedron() {
  return mapFromFaces({{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
}

/// Cube graph Q3: bottom 1-2-3-4, top 5-6-7-8, verticals i to i+4.
inline FlagMap cube() {
  return mapFromFaces({{1, 2, 3, 4},
                       {5, 6, 7, 8},
                       {1, 2, 6, 5},
                       {2, 3, 7, 6},
                       {3, 4, 8, 7},
                       {4, 1, 5, 8}});
}

/// n-gonal bipyramid: base cycle 1..n, apexes a = n+1 and b = n+2.
/// Marks "a" and "b" alias the apexes; bipyramid(4) is the octahedron.
inline FlagMap bipyramid(int n) {
  if (n < 3)
    throw Error(Err::SyntaxError, "bipyramid needs a base of at least 3");
  std::vector<std::vector<int>> faces;
  for (int i = 1; i <= n; ++i) {
    const int j = (i % n) + 1;
    faces.push_back({i, j, n + 1});
    faces.push_back({i, j, n + 2});
  }
  FlagMap m = mapFromFaces(faces);
  m.setMark("a", m.mark("v" + std::to_string(n + 1)));
  m.setMark("b", m.mark("v" + std::to_string(n + 2)));
  return m;
}

/// Two k-gons glued along their shared boundary cycle (V=k, E=k, F=2).
/// dihedron(4) is the "pillow" used by the face-pair violation tests.
inline FlagMap dihedron(int k) {
  if (k < 3)
    throw Error(Err::SyntaxError, "dihedron needs k >= 3");
  std::vector<int> walk(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) walk[static_cast<std::size_t>(i)] = i + 1;
  return mapFromFaces({walk, walk});
}

/// Triangulation of the torus by K7: faces {i,i+1,i+3} and {i,i+2,i+3} mod 7.
inline FlagMap k7Torus() {
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return mapFromFaces(faces);
}

/// Triangulation of the projective plane by K6 (10 triangles, chi = 1).
inline FlagMap k6Projective() {
  return mapFromFaces({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                       {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
}

}  // namespace zmono

#pragma once

// Flag model of a graph cellularly embedded in a closed surface.
//
// A map on n flags is a triple of involutions (s0, s1, s2) acting on
// {0..n-1} without fixed points such that s0*s2 is also a fixed-point-free
// involution and the action of <s0,s1,s2> is transitive.  Orbits of
// <s1,s2> are vertices, orbits of <s0,s2> are edges (always size 4),
// orbits of <s0,s1> are faces.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace zmono {

using Flag = std::uint32_t;
inline constexpr Flag kNoFlag = 0xffffffffu;

enum class Err {
  NotInvolution,
  FixedPointFlag,
  EdgeNotQuadrilateral,
  Disconnected,
  BadMark,
  SSViolated,
  SyntaxError,
  SymbolOutOfRange,
  RepeatedSymbol,
  M1Violation,
  M2Violation,
  EdgeNotOnFace,
  NotFourRegular,
  DualNotBipartite,
  InternalDegeneracy,
  NotAFaceLoop,
  EdgeOnProtectedFace,
  PatchContractViolation,
  ProtectedFaceViolation,
  RepairBudgetExceeded,
  VerificationMismatch,
  NoEligibleEdge,
  FaceNotTriangular,
  CompositionSSFailure,
  NoGeometry,
  IoError,
};

inline const char* errName(Err e) {
  switch (e) {
    case Err::NotInvolution: return "NotInvolution";
    case Err::FixedPointFlag: return "FixedPointFlag";
    case Err::EdgeNotQuadrilateral: return "EdgeNotQuadrilateral";
    case Err::Disconnected: return "Disconnected";
    case Err::BadMark: return "BadMark";
    case Err::SSViolated: return "SSViolated";
    case Err::SyntaxError: return "SyntaxError";
    case Err::SymbolOutOfRange: return "SymbolOutOfRange";
    case Err::RepeatedSymbol: return "RepeatedSymbol";
    case Err::M1Violation: return "M1Violation";
    case Err::M2Violation: return "M2Violation";
    case Err::EdgeNotOnFace: return "EdgeNotOnFace";
    case Err::NotFourRegular: return "NotFourRegular";
    case Err::DualNotBipartite: return "DualNotBipartite";
    case Err::InternalDegeneracy: return "InternalDegeneracy";
    case Err::NotAFaceLoop: return "NotAFaceLoop";
    case Err::EdgeOnProtectedFace: return "EdgeOnProtectedFace";
    case Err::PatchContractViolation: return "PatchContractViolation";
    case Err::ProtectedFaceViolation: return "ProtectedFaceViolation";
    case Err::RepairBudgetExceeded: return "RepairBudgetExceeded";
    case Err::VerificationMismatch: return "VerificationMismatch";
    case Err::NoEligibleEdge: return "NoEligibleEdge";
    case Err::FaceNotTriangular: return "FaceNotTriangular";
    case Err::CompositionSSFailure: return "CompositionSSFailure";
    case Err::NoGeometry: return "NoGeometry";
    case Err::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what, long a = -1, long b = -1)
      : std::runtime_error(std::string(errName(code)) + ": " + what),
        code_(code), detail_a_(a), detail_b_(b) {}

  Err code() const { return code_; }
  long detailA() const { return detail_a_; }
  long detailB() const { return detail_b_; }

 private:
  Err code_;
  long detail_a_;
  long detail_b_;
};

namespace detail {

inline void checkInvolution(const std::vector<Flag>& s, Flag n, int which) {
  if (s.size() != n)
    throw Error(Err::NotInvolution, "s" + std::to_string(which) +
                " has wrong length", which);
  for (Flag f = 0; f < n; ++f) {
    if (s[f] >= n || s[s[f]] != f)
      throw Error(Err::NotInvolution,
                  "s" + std::to_string(which) + " is not an involution at flag " +
                  std::to_string(f), which, static_cast<long>(f));
    if (s[f] == f)
      throw Error(Err::FixedPointFlag,
                  "s" + std::to_string(which) + " fixes flag " + std::to_string(f),
                  which, static_cast<long>(f));
  }
}

}  // namespace detail

/// Checks the map axioms; throws Error on the first failure.
inline void validateFlagMap(Flag flag_count,
                            const std::vector<Flag>& s0,
                            const std::vector<Flag>& s1,
                            const std::vector<Flag>& s2,
                            const std::map<std::string, Flag>& marks = {}) {
  const Flag n = flag_count;
  if (n == 0 || n % 4 != 0)
    throw Error(Err::EdgeNotQuadrilateral,
                "flag count must be a positive multiple of 4, got " +
                std::to_string(n), static_cast<long>(n));
  detail::checkInvolution(s0, n, 0);
  detail::checkInvolution(s1, n, 1);
  detail::checkInvolution(s2, n, 2);
  // s0*s2 must be a fixed-point-free involution, i.e. each <s0,s2> orbit is a
  // quadrilateral {f, s0 f, s2 f, s0 s2 f} of four distinct flags.
  for (Flag f = 0; f < n; ++f) {
    if (s0[s2[f]] != s2[s0[f]] || s0[s2[f]] == f)
      throw Error(Err::EdgeNotQuadrilateral,
                  "edge orbit at flag " + std::to_string(f) +
                  " is not a quadrilateral", static_cast<long>(f));
  }
  // Transitivity.
  std::vector<char> seen(n, 0);
  std::vector<Flag> stack{0};
  seen[0] = 1;
  Flag reached = 1;
  while (!stack.empty()) {
    Flag f = stack.back();
    stack.pop_back();
    for (Flag g : {s0[f], s1[f], s2[f]})
      if (!seen[g]) { seen[g] = 1; ++reached; stack.push_back(g); }
  }
  if (reached != n)
    throw Error(Err::Disconnected,
                "flag graph has " + std::to_string(n - reached) +
                " unreachable flags", static_cast<long>(n - reached));
  for (const auto& [name, f] : marks)
    if (f >= n)
      throw Error(Err::BadMark, "mark '" + name + "' points at flag " +
                  std::to_string(f) + " out of range", static_cast<long>(f));
}

/// Immutable-structure flag map with named flag marks.
class FlagMap {
 public:
  FlagMap(Flag flag_count,
          std::vector<Flag> s0, std::vector<Flag> s1, std::vector<Flag> s2,
          std::map<std::string, Flag> marks = {})
      : n_(flag_count), marks_(std::move(marks)) {
    validateFlagMap(flag_count, s0, s1, s2, marks_);
    inv_[0] = std::move(s0);
    inv_[1] = std::move(s1);
    inv_[2] = std::move(s2);
  }

  Flag flagCount() const { return n_; }
  Flag s(int i, Flag f) const { return inv_[i][f]; }
  Flag s0(Flag f) const { return inv_[0][f]; }
  Flag s1(Flag f) const { return inv_[1][f]; }
  Flag s2(Flag f) const { return inv_[2][f]; }
  const std::vector<Flag>& involution(int i) const { return inv_[i]; }

  const std::map<std::string, Flag>& marks() const { return marks_; }
  bool hasMark(const std::string& name) const { return marks_.count(name) != 0; }
  Flag mark(const std::string& name) const {
    auto it = marks_.find(name);
    if (it == marks_.end())
      throw Error(Err::BadMark, "no mark named '" + name + "'");
    return it->second;
  }
  void setMark(const std::string& name, Flag f) {
    if (f >= n_)
      throw Error(Err::BadMark, "mark '" + name + "' out of range",
                  static_cast<long>(f));
    marks_[name] = f;
  }
  void dropMark(const std::string& name) { marks_.erase(name); }

 private:
  Flag n_;
  std::array<std::vector<Flag>, 3> inv_;
  std::map<std::string, Flag> marks_;
};

/// Cell decomposition: vertex/edge/face orbit ids per flag.
/// Ids are dense, ordered by each orbit's smallest flag (the representative).
struct Cells {
  std::vector<std::uint32_t> vertex_of;  // indexed by flag
  std::vector<std::uint32_t> edge_of;
  std::vector<std::uint32_t> face_of;
  std::vector<Flag> vertex_rep;          // indexed by cell id
  std::vector<Flag> edge_rep;
  std::vector<Flag> face_rep;

  std::uint32_t vertexCount() const { return static_cast<std::uint32_t>(vertex_rep.size()); }
  std::uint32_t edgeCount() const { return static_cast<std::uint32_t>(edge_rep.size()); }
  std::uint32_t faceCount() const { return static_cast<std::uint32_t>(face_rep.size()); }
};

namespace detail {

// Orbits of the subgroup generated by two involutions; ids follow the order
// of each orbit's minimal flag.
inline void twoGeneratorOrbits(const FlagMap& m, int gen_a, int gen_b,
                               std::vector<std::uint32_t>& id_of,
                               std::vector<Flag>& rep_of) {
  const Flag n = m.flagCount();
  id_of.assign(n, 0xffffffffu);
  rep_of.clear();
  for (Flag f = 0; f < n; ++f) {
    if (id_of[f] != 0xffffffffu) continue;
    const auto id = static_cast<std::uint32_t>(rep_of.size());
    rep_of.push_back(f);
    std::vector<Flag> stack{f};
    id_of[f] = id;
    while (!stack.empty()) {
      Flag g = stack.back();
      stack.pop_back();
      for (Flag h : {m.s(gen_a, g), m.s(gen_b, g)})
        if (id_of[h] == 0xffffffffu) { id_of[h] = id; stack.push_back(h); }
    }
  }
}

}  // namespace detail

inline Cells cells(const FlagMap& m) {
  Cells c;
  detail::twoGeneratorOrbits(m, 1, 2, c.vertex_of, c.vertex_rep);
  detail::twoGeneratorOrbits(m, 0, 2, c.edge_of, c.edge_rep);
  detail::twoGeneratorOrbits(m, 0, 1, c.face_of, c.face_rep);
  return c;
}

inline long eulerCharacteristic(const FlagMap& m) {
  Cells c = cells(m);
  return static_cast<long>(c.vertexCount()) - static_cast<long>(c.edgeCount()) +
         static_cast<long>(c.faceCount());
}

/// A map is orientable iff its flag graph is bipartite with every s_i
/// switching sides.
inline bool isOrientable(const FlagMap& m) {
  const Flag n = m.flagCount();
  std::vector<signed char> color(n, -1);
  std::vector<Flag> stack{0};
  color[0] = 0;
  while (!stack.empty()) {
    Flag f = stack.back();
    stack.pop_back();
    for (int i = 0; i < 3; ++i) {
      Flag g = m.s(i, f);
      if (color[g] == -1) { color[g] = static_cast<signed char>(1 - color[f]); stack.push_back(g); }
      else if (color[g] == color[f]) return false;
    }
  }
  return true;
}

/// Per-flag orientation class on an orientable map (0/1 2-coloring of the
/// flag graph, class of flag 0 is 0).  Throws if non-orientable.
inline std::vector<signed char> orientationClasses(const FlagMap& m) {
  const Flag n = m.flagCount();
  std::vector<signed char> color(n, -1);
  std::vector<Flag> stack{0};
  color[0] = 0;
  while (!stack.empty()) {
    Flag f = stack.back();
    stack.pop_back();
    for (int i = 0; i < 3; ++i) {
      Flag g = m.s(i, f);
      if (color[g] == -1) { color[g] = static_cast<signed char>(1 - color[f]); stack.push_back(g); }
      else if (color[g] == color[f])
        throw Error(Err::InternalDegeneracy, "orientation classes requested on a non-orientable map");
    }
  }
  return color;
}

/// The dual map swaps the roles of vertices and faces; flags keep their ids.
inline FlagMap dual(const FlagMap& m) {
  return FlagMap(m.flagCount(), m.involution(2), m.involution(1), m.involution(0),
                 m.marks());
}

/// Flag-map isomorphism (marks ignored).  The image of one flag determines
/// the whole morphism because the flag graph is connected, so we try every
/// anchor image.
inline bool isIsomorphic(const FlagMap& a, const FlagMap& b) {
  const Flag n = a.flagCount();
  if (n != b.flagCount()) return false;
  {
    Cells ca = cells(a), cb = cells(b);
    if (ca.vertexCount() != cb.vertexCount() || ca.edgeCount() != cb.edgeCount() ||
        ca.faceCount() != cb.faceCount())
      return false;
  }
  std::vector<Flag> img(n);
  for (Flag anchor = 0; anchor < n; ++anchor) {
    std::fill(img.begin(), img.end(), kNoFlag);
    img[0] = anchor;
    std::vector<Flag> stack{0};
    bool ok = true;
    while (ok && !stack.empty()) {
      Flag f = stack.back();
      stack.pop_back();
      for (int i = 0; i < 3; ++i) {
        Flag g = a.s(i, f);
        Flag h = b.s(i, img[f]);
        if (img[g] == kNoFlag) { img[g] = h; stack.push_back(g); }
        else if (img[g] != h) { ok = false; break; }
      }
    }
    if (!ok) continue;
    // img is a bijection: it is everywhere-defined (connectedness) and any
    // collision would have violated equivariance above; still check cheaply.
    std::vector<char> hit(n, 0);
    for (Flag f = 0; f < n; ++f) {
      if (hit[img[f]]) { ok = false; break; }
      hit[img[f]] = 1;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace zmono

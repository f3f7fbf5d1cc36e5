#pragma once

// Signed permutations on [k]± = {1..k, -1..-k}, their admissibility
// conditions, enumeration, and the z-monodromy of a face frame.
//
// A frame labels one face's boundary e_1..e_k along a chosen orientation
// (e_j directed v_{j-1} -> v_j) and represents each oriented edge by its
// head flag: the flag at the head vertex of e_j, on the edge of e_j, inside
// the framed face.  The boundary rotation D sends each oriented edge to the
// next one in its own direction: D(e_j) = e_{j+1} and D(-e_j) = -e_{j-1}.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "zmono/core.hpp"
#include "zmono/rng.hpp"
#include "zmono/violations.hpp"
#include "zmono/zigzag.hpp"

namespace zmono {

/// Permutation of the 2k signed symbols.
struct ZPerm {
  int k = 0;
  std::vector<int> img;  // indexed by symIndex

  bool operator==(const ZPerm&) const = default;
};

inline int symIndex(int k, int s) {
  if (s == 0 || s > k || s < -k)
    throw Error(Err::SymbolOutOfRange,
                "symbol " + std::to_string(s) + " out of range for k = " +
                std::to_string(k), s, k);
  return s > 0 ? s - 1 : k - s - 1;
}

inline int symFromIndex(int k, int idx) {
  return idx < k ? idx + 1 : -(idx - k + 1);
}

inline int zpApply(const ZPerm& p, int s) { return p.img[symIndex(p.k, s)]; }

inline ZPerm zpIdentity(int k) {
  ZPerm p;
  p.k = k;
  p.img.resize(2 * static_cast<std::size_t>(k));
  for (int idx = 0; idx < 2 * k; ++idx) p.img[idx] = symFromIndex(k, idx);
  return p;
}

inline ZPerm zpInverse(const ZPerm& p) {
  ZPerm q = zpIdentity(p.k);
  for (int idx = 0; idx < 2 * p.k; ++idx)
    q.img[symIndex(p.k, p.img[idx])] = symFromIndex(p.k, idx);
  return q;
}

/// a after b: x -> a(b(x)).
inline ZPerm zpCompose(const ZPerm& a, const ZPerm& b) {
  ZPerm r = zpIdentity(a.k);
  for (int idx = 0; idx < 2 * a.k; ++idx)
    r.img[idx] = zpApply(a, b.img[idx]);
  return r;
}

/// Conjugation by a signed relabeling g: returns g∘p∘g⁻¹.
inline ZPerm zpConjugate(const ZPerm& p, const std::function<int(int)>& g) {
  ZPerm r = zpIdentity(p.k);
  for (int idx = 0; idx < 2 * p.k; ++idx) {
    const int x = symFromIndex(p.k, idx);
    r.img[symIndex(p.k, g(x))] = g(zpApply(p, x));
  }
  return r;
}

/// The two admissibility conditions: the mirror rule (if s maps to t then -t
/// maps back to -s) and no symbol mapping to its own negation.  Bijectivity
/// is re-checked too since raw tables can come from files.
inline void checkAdmissible(const ZPerm& p) {
  const int k = p.k;
  std::vector<char> hit(2 * static_cast<std::size_t>(k), 0);
  for (int idx = 0; idx < 2 * k; ++idx) {
    const int s = symFromIndex(k, idx);
    const int t = zpApply(p, s);
    const int ti = symIndex(k, t);  // range-checks t
    if (hit[ti])
      throw Error(Err::RepeatedSymbol,
                  "two symbols map to " + std::to_string(t), t);
    hit[ti] = 1;
    if (t == -s)
      throw Error(Err::M2Violation,
                  std::to_string(s) + " maps to its own negation", s);
  }
  for (int idx = 0; idx < 2 * k; ++idx) {
    const int s = symFromIndex(k, idx);
    const int t = zpApply(p, s);
    if (zpApply(p, -t) != -s)
      throw Error(Err::M1Violation,
                  "mirror rule broken: " + std::to_string(s) + " maps to " +
                  std::to_string(t) + " but " + std::to_string(-t) +
                  " does not map to " + std::to_string(-s), s, t);
  }
}

inline bool isAdmissible(const ZPerm& p) {
  try {
    checkAdmissible(p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// Signed cycle notation, e.g. "(1,-6,-4,2)(3,-5)(5,-3)(-2,4,6,-1)".
/// Unmentioned symbols are fixed points; "" is the identity.  The result is
/// verified admissible.
inline ZPerm parseCandidate(const std::string& text, int k) {
  if (k < 1)
    throw Error(Err::SyntaxError, "k must be at least 1", k);
  ZPerm p = zpIdentity(k);
  std::vector<char> seen(2 * static_cast<std::size_t>(k), 0);
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw Error(Err::SyntaxError,
                  "expected '(' at position " + std::to_string(i),
                  static_cast<long>(i));
    ++i;
    std::vector<int> cyc;
    for (;;) {
      skip_ws();
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error(Err::SyntaxError,
                    "expected an integer at position " + std::to_string(i),
                    static_cast<long>(i));
      long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1000000)
          throw Error(Err::SymbolOutOfRange, "symbol magnitude too large", v);
        ++i;
      }
      const int s = static_cast<int>(neg ? -v : v);
      if (s == 0 || s > k || s < -k)
        throw Error(Err::SymbolOutOfRange,
                    "symbol " + std::to_string(s) + " out of range for k = " +
                    std::to_string(k), s, k);
      if (seen[symIndex(k, s)])
        throw Error(Err::RepeatedSymbol,
                    "symbol " + std::to_string(s) + " appears twice", s);
      seen[symIndex(k, s)] = 1;
      cyc.push_back(s);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw Error(Err::SyntaxError,
                  "expected ',' or ')' at position " + std::to_string(i),
                  static_cast<long>(i));
    }
    for (std::size_t j = 0; j < cyc.size(); ++j)
      p.img[symIndex(k, cyc[j])] = cyc[(j + 1) % cyc.size()];
    skip_ws();
  }
  checkAdmissible(p);
  return p;
}

namespace detail {

// Display order 1 < 2 < ... < k < -k < ... < -1.
inline int symbolRank(int k, int s) { return s > 0 ? s : 2 * k + s + 1; }

inline void rotateToMinRank(int k, std::vector<int>& cyc) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < cyc.size(); ++j)
    if (symbolRank(k, cyc[j]) < symbolRank(k, cyc[best])) best = j;
  std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(best), cyc.end());
}

inline std::vector<int> mirrorCycle(int k, std::vector<int> cyc) {
  for (int& s : cyc) s = -s;
  std::reverse(cyc.begin(), cyc.end());
  rotateToMinRank(k, cyc);
  return cyc;
}

}  // namespace detail

/// Canonical cycle notation.  Nontrivial cycles pair up under the mirror
/// (negate and reverse); each pair's primary cycle is the one led by the
/// lower-ranked symbol (order 1..k,-k..-1).  Primaries print first in lead
/// order, then the mirrors in reverse pair order, each written as the
/// literal negate-and-reverse of its primary.  Fixed points are omitted;
/// the identity prints as "".
inline std::string formatCandidate(const ZPerm& p) {
  checkAdmissible(p);
  const int k = p.k;
  std::vector<std::vector<int>> cycles;
  std::vector<char> used(2 * static_cast<std::size_t>(k), 0);
  for (int idx = 0; idx < 2 * k; ++idx) {
    if (used[idx]) continue;
    const int start = symFromIndex(k, idx);
    if (zpApply(p, start) == start) {
      used[idx] = 1;
      continue;
    }
    std::vector<int> cyc;
    int s = start;
    do {
      used[symIndex(k, s)] = 1;
      cyc.push_back(s);
      s = zpApply(p, s);
    } while (s != start);
    detail::rotateToMinRank(k, cyc);
    cycles.push_back(std::move(cyc));
  }
  if (cycles.empty()) return "";
  std::sort(cycles.begin(), cycles.end(),
            [&](const std::vector<int>& a, const std::vector<int>& b) {
              return detail::symbolRank(k, a[0]) < detail::symbolRank(k, b[0]);
            });

  std::vector<std::vector<int>> primaries;
  std::vector<char> claimed(cycles.size(), 0);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    if (claimed[i]) continue;
    claimed[i] = 1;
    const auto mirror = detail::mirrorCycle(k, cycles[i]);
    bool matched = false;
    for (std::size_t j = i + 1; j < cycles.size(); ++j)
      if (!claimed[j] && cycles[j] == mirror) {
        claimed[j] = 1;
        matched = true;
        break;
      }
    if (!matched)
      throw Error(Err::InternalDegeneracy,
                  "cycle has no mirror partner; permutation is not admissible");
    primaries.push_back(cycles[i]);
  }

  const auto emit = [](std::string& out, const std::vector<int>& cyc) {
    out += '(';
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(cyc[j]);
    }
    out += ')';
  };
  std::string out;
  for (const auto& c : primaries) emit(out, c);
  for (auto it = primaries.rbegin(); it != primaries.rend(); ++it) {
    std::vector<int> m = *it;
    for (int& s : m) s = -s;
    std::reverse(m.begin(), m.end());
    emit(out, m);
  }
  return out;
}

/// (2k-1)!! — the number of admissible permutations for a given k.
inline unsigned long long countCandidates(int k) {
  unsigned long long c = 1;
  for (int m = 3; m <= 2 * k - 1; m += 2) c *= static_cast<unsigned long long>(m);
  return c;
}

/// Streams every admissible permutation exactly once, in a fixed order.
/// Generation runs over fixed-point-free involutions nu via sigma(x) = -nu(x):
/// sigma is admissible iff x -> -sigma(x) is such an involution.
inline void enumerateCandidates(int k, const std::function<void(const ZPerm&)>& fn) {
  const int n = 2 * k;
  std::vector<int> partner(static_cast<std::size_t>(n), -1);
  ZPerm p = zpIdentity(k);
  const std::function<void(int)> rec = [&](int lo) {
    while (lo < n && partner[lo] != -1) ++lo;
    if (lo == n) {
      for (int idx = 0; idx < n; ++idx)
        p.img[idx] = -symFromIndex(k, partner[idx]);
      fn(p);
      return;
    }
    for (int other = lo + 1; other < n; ++other) {
      if (partner[other] != -1) continue;
      partner[lo] = other;
      partner[other] = lo;
      rec(lo + 1);
      partner[lo] = -1;
      partner[other] = -1;
    }
  };
  rec(0);
}

inline std::vector<ZPerm> allCandidates(int k) {
  std::vector<ZPerm> out;
  enumerateCandidates(k, [&](const ZPerm& p) { out.push_back(p); });
  return out;
}

/// Uniformly random admissible permutation (random fixed-point-free
/// involution paired greedily from the smallest free symbol).
inline ZPerm randomCandidate(int k, SplitMix64& rng) {
  const int n = 2 * k;
  std::vector<int> partner(static_cast<std::size_t>(n), -1);
  for (int lo = 0; lo < n; ++lo) {
    if (partner[lo] != -1) continue;
    std::vector<int> free;
    for (int other = lo + 1; other < n; ++other)
      if (partner[other] == -1) free.push_back(other);
    const int pick = free[static_cast<std::size_t>(rng.below(free.size()))];
    partner[lo] = pick;
    partner[pick] = lo;
  }
  ZPerm p = zpIdentity(k);
  for (int idx = 0; idx < n; ++idx) p.img[idx] = -symFromIndex(k, partner[idx]);
  return p;
}

// ---------------------------------------------------------------------------
// Face frames and the z-monodromy.

struct FaceFrame {
  Flag base = 0;  // head flag of e_1
  int k = 0;      // face length
};

inline FaceFrame frameAt(const FlagMap& m, Flag base) {
  int k = 0;
  Flag f = base;
  do {
    f = m.s0(m.s1(f));
    ++k;
  } while (f != base);
  return FaceFrame{base, k};
}

/// Head flags of e_1..e_k in boundary order.
inline std::vector<Flag> frameHeads(const FlagMap& m, const FaceFrame& fr) {
  std::vector<Flag> h(static_cast<std::size_t>(fr.k));
  h[0] = fr.base;
  for (int j = 1; j < fr.k; ++j)
    h[static_cast<std::size_t>(j)] = m.s0(m.s1(h[static_cast<std::size_t>(j - 1)]));
  return h;
}

inline Flag frameFlag(const FlagMap& m, const std::vector<Flag>& heads, int s) {
  return s > 0 ? heads[static_cast<std::size_t>(s - 1)]
               : m.s0(heads[static_cast<std::size_t>(-s - 1)]);
}

/// Symbol of a flag lying on the framed face (positive for heads, negative
/// for their reversals); throws EdgeNotOnFace for anything else.
inline int frameSymbolOf(const FlagMap& m, const std::vector<Flag>& heads, Flag f) {
  for (std::size_t j = 0; j < heads.size(); ++j) {
    if (heads[j] == f) return static_cast<int>(j) + 1;
    if (m.s0(heads[j]) == f) return -(static_cast<int>(j) + 1);
  }
  throw Error(Err::EdgeNotOnFace, "flag " + std::to_string(f) +
              " is not on the framed face", static_cast<long>(f));
}

/// The boundary rotation as a symbol permutation:
/// (1 2 ... k)(-k ... -2 -1).
inline ZPerm rotationDF(int k) {
  ZPerm p = zpIdentity(k);
  for (int j = 1; j <= k; ++j) {
    p.img[symIndex(k, j)] = j % k + 1;
    p.img[symIndex(k, -j)] = -((j + k - 2) % k + 1);
  }
  return p;
}

inline ZPerm rotationDF(const FaceFrame& fr) { return rotationDF(fr.k); }

/// z-monodromy of the framed face, with no simplicity gate.  For each
/// oriented boundary edge e: start from the corner pair (D⁻¹(e), e), follow
/// the zigzag, and return the first oriented boundary edge of the face it
/// traverses after that pair.  Well-defined on every valid map; the public
/// entry point below insists on the simplicity condition under which this
/// is THE z-monodromy.
inline ZPerm zMonodromyUnchecked(const FlagMap& m, const FaceFrame& fr) {
  const auto heads = frameHeads(m, fr);
  const int k = fr.k;
  std::vector<char> on_face(m.flagCount(), 0);
  for (Flag h : heads) {
    on_face[h] = 1;
    on_face[m.s0(h)] = 1;
  }
  ZPerm out = zpIdentity(k);
  for (int idx = 0; idx < 2 * k; ++idx) {
    const int s = symFromIndex(k, idx);
    const Flag e = frameFlag(m, heads, s);
    Flag z = m.s2(e);
    for (Flag guard = 0;; ++guard) {
      if (guard > m.flagCount())
        throw Error(Err::InternalDegeneracy, "zigzag never returned to the face");
      z = zigzagStep(m, z);
      if (on_face[z]) {
        out.img[idx] = frameSymbolOf(m, heads, z);
        break;
      }
      if (on_face[m.s2(z)]) {
        out.img[idx] = frameSymbolOf(m, heads, m.s2(z));
        break;
      }
    }
  }
  return out;
}

inline ZPerm zMonodromy(const FlagMap& m, const FaceFrame& fr) {
  requireSS(m, "z-monodromy");
  return zMonodromyUnchecked(m, fr);
}

/// Property audit over every face and both orientations: each z-monodromy
/// must be a valid candidate (bijective, mirror rule, no self-negation).
struct MonodromyAudit {
  long frames_checked = 0;
  std::vector<std::string> violations;
};

inline MonodromyAudit auditMonodromies(const FlagMap& m) {
  requireSS(m, "monodromy audit");
  const Cells c = cells(m);
  MonodromyAudit audit;
  for (std::uint32_t fid = 0; fid < c.faceCount(); ++fid) {
    const Flag rep = c.face_rep[fid];
    for (const Flag base : {rep, m.s0(rep)}) {
      ++audit.frames_checked;
      try {
        checkAdmissible(zMonodromyUnchecked(m, frameAt(m, base)));
      } catch (const Error& e) {
        audit.violations.push_back("face " + std::to_string(fid) + " base " +
                                   std::to_string(base) + ": " + e.what());
      }
    }
  }
  return audit;
}

// ---------------------------------------------------------------------------
// Classification of candidates under relabeling symmetries.

/// Orbits of the admissible set under any subset of: rotation (conjugation
/// by the boundary rotation), reflection (conjugation by global negation),
/// reversal (permutation inverse).  Returns classes as index lists into
/// allCandidates(k), each class sorted, classes ordered by smallest member.
inline std::vector<std::vector<std::size_t>> classifyCandidates(int k, bool rotation,
                                                                bool reflection,
                                                                bool reversal) {
  const std::vector<ZPerm> all = allCandidates(k);
  std::map<std::vector<int>, std::size_t> index_of;
  for (std::size_t i = 0; i < all.size(); ++i) index_of[all[i].img] = i;

  const auto rot = [k](int s) {
    const int a = std::abs(s) % k + 1;
    return s > 0 ? a : -a;
  };
  const auto neg = [](int s) { return -s; };

  std::vector<std::size_t> cls(all.size(), SIZE_MAX);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (cls[i] != SIZE_MAX) continue;
    const std::size_t id = classes.size();
    std::vector<std::size_t> members;
    std::vector<std::size_t> stack{i};
    cls[i] = id;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      members.push_back(cur);
      std::vector<ZPerm> nbrs;
      if (rotation) nbrs.push_back(zpConjugate(all[cur], rot));
      if (reflection) nbrs.push_back(zpConjugate(all[cur], neg));
      if (reversal) nbrs.push_back(zpInverse(all[cur]));
      for (const ZPerm& q : nbrs) {
        const auto it = index_of.find(q.img);
        if (it == index_of.end())
          throw Error(Err::InternalDegeneracy,
                      "symmetry image of an admissible candidate is not admissible");
        if (cls[it->second] == SIZE_MAX) {
          cls[it->second] = id;
          stack.push_back(it->second);
        }
      }
    }
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  return classes;
}

}  // namespace zmono

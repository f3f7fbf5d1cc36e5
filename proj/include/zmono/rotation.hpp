#pragma once

// Rotation systems for orientable maps: darts in twin pairs (twin(d) = d^1),
// a ccw successor rho at every vertex, and origin vertices.  This is the
// mutable substrate the construction and repair code cuts and splices;
// FlagMap stays the immutable analysis form.  Conversions in both directions
// carry an explicit flag correspondence so marks can ride along: host flag f
// reappears as flag 2*dart_of[f] + bit_of[f] after a round trip.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "zmono/core.hpp"

namespace zmono {

using Dart = std::uint32_t;

struct Compaction {
  std::vector<Dart> dart_map;             // old dart -> new, kNoFlag when dead
  std::vector<std::uint32_t> vertex_map;  // old vertex -> new, kNoFlag when dropped
};

class RotationSystem {
 public:
  static Dart twin(Dart d) { return d ^ 1u; }

  std::uint32_t vertexCount() const { return vertex_count_; }
  std::uint32_t dartLimit() const { return static_cast<std::uint32_t>(rho_.size()); }
  bool alive(Dart d) const { return d < alive_.size() && alive_[d]; }
  std::uint32_t aliveDartCount() const {
    return static_cast<std::uint32_t>(std::count(alive_.begin(), alive_.end(), 1));
  }
  bool isCompact() const { return aliveDartCount() == dartLimit(); }

  Dart rho(Dart d) const { return rho_[check(d)]; }
  Dart rhoInv(Dart d) const { return rho_inv_[check(d)]; }
  std::uint32_t origin(Dart d) const { return origin_[check(d)]; }
  /// Next dart along the boundary walk of the face on d's reference side.
  Dart faceNext(Dart d) const { return rho_inv_[check(twin(d))]; }

  std::uint32_t addVertex() { return vertex_count_++; }

  /// New edge from u to v; returns the dart at u (even id; its twin sits at
  /// v).  Both darts start detached, rotating onto themselves, and must be
  /// installed with setRotation or replaceDartWith before conversion.
  Dart addEdge(std::uint32_t u, std::uint32_t v) {
    const Dart d = dartLimit();
    for (std::uint32_t end : {u, v}) {
      if (end >= vertex_count_)
        throw Error(Err::InternalDegeneracy, "edge endpoint out of range", end);
      rho_.push_back(static_cast<Dart>(rho_.size()));
      rho_inv_.push_back(static_cast<Dart>(rho_inv_.size()));
      origin_.push_back(end);
      alive_.push_back(1);
    }
    return d;
  }

  /// Install the full ccw rotation at v.  The list must name every live dart
  /// whose origin is v, exactly once.
  void setRotation(std::uint32_t v, const std::vector<Dart>& ccw) {
    std::vector<Dart> at_v;
    for (Dart d = 0; d < dartLimit(); ++d)
      if (alive_[d] && origin_[d] == v) at_v.push_back(d);
    std::vector<Dart> sorted = ccw;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != at_v)
      throw Error(Err::InternalDegeneracy,
                  "rotation list does not match the darts at vertex " + std::to_string(v));
    for (std::size_t i = 0; i < ccw.size(); ++i) {
      const Dart a = ccw[i];
      const Dart b = ccw[(i + 1) % ccw.size()];
      rho_[a] = b;
      rho_inv_[b] = a;
    }
  }

  /// Splice seq into d_old's slot in its vertex rotation and retire d_old.
  /// An empty seq just closes the gap.  Every dart in seq must be fresh
  /// (still detached) and based at the same vertex.
  void replaceDartWith(Dart d_old, const std::vector<Dart>& seq) {
    check(d_old);
    const std::uint32_t v = origin_[d_old];
    for (Dart x : seq) {
      check(x);
      if (origin_[x] != v)
        throw Error(Err::InternalDegeneracy, "replacement dart is based elsewhere", x);
      if (rho_[x] != x || x == d_old)
        throw Error(Err::InternalDegeneracy, "replacement dart is already installed", x);
    }
    const Dart prev = rho_inv_[d_old];
    const Dart next = rho_[d_old];
    if (seq.empty()) {
      if (prev != d_old) {
        rho_[prev] = next;
        rho_inv_[next] = prev;
      }
    } else if (prev == d_old) {  // d_old was the whole rotation
      for (std::size_t i = 0; i < seq.size(); ++i) {
        rho_[seq[i]] = seq[(i + 1) % seq.size()];
        rho_inv_[seq[(i + 1) % seq.size()]] = seq[i];
      }
    } else {
      rho_[prev] = seq.front();
      rho_inv_[seq.front()] = prev;
      for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        rho_[seq[i]] = seq[i + 1];
        rho_inv_[seq[i + 1]] = seq[i];
      }
      rho_[seq.back()] = next;
      rho_inv_[next] = seq.back();
    }
    alive_[d_old] = 0;
    rho_[d_old] = d_old;
    rho_inv_[d_old] = d_old;
  }

  void removeEdge(Dart d) {
    replaceDartWith(d, {});
    replaceDartWith(twin(d), {});
  }

  /// Ccw dart cycle at v starting from the smallest dart; empty if isolated.
  std::vector<Dart> vertexDarts(std::uint32_t v) const {
    Dart start = kNoFlag;
    std::uint32_t count = 0;
    for (Dart d = 0; d < dartLimit(); ++d)
      if (alive_[d] && origin_[d] == v) {
        ++count;
        if (start == kNoFlag) start = d;
      }
    std::vector<Dart> out;
    if (start == kNoFlag) return out;
    Dart d = start;
    do {
      out.push_back(d);
      d = rho_[d];
    } while (d != start && out.size() <= count);
    if (out.size() != count)
      throw Error(Err::InternalDegeneracy,
                  "rotation at vertex " + std::to_string(v) + " is not a single cycle");
    return out;
  }

  std::vector<Dart> faceDarts(Dart d) const {
    std::vector<Dart> out;
    Dart cur = check(d);
    do {
      out.push_back(cur);
      cur = faceNext(cur);
    } while (cur != d && out.size() <= dartLimit());
    if (cur != d)
      throw Error(Err::InternalDegeneracy, "face walk never closed");
    return out;
  }

  void validate() const {
    for (Dart d = 0; d < dartLimit(); ++d) {
      if (!alive_[d]) continue;
      if (!alive_[twin(d)])
        throw Error(Err::InternalDegeneracy, "dart survived its twin", d);
      if (!alive_[rho_[d]] || origin_[rho_[d]] != origin_[d])
        throw Error(Err::InternalDegeneracy, "rho leaves the vertex of dart", d);
      if (rho_inv_[rho_[d]] != d || rho_[rho_inv_[d]] != d)
        throw Error(Err::InternalDegeneracy, "rho inverse tables disagree at dart", d);
      if (origin_[d] >= vertex_count_)
        throw Error(Err::InternalDegeneracy, "dart origin out of range", d);
    }
    for (std::uint32_t v = 0; v < vertex_count_; ++v) vertexDarts(v);  // single cycle
  }

  /// Drop dead darts and isolated vertices, renumbering densely; twin pairs
  /// keep adjacent ids.  Returns the old-to-new maps.
  Compaction compact() {
    validate();
    Compaction out;
    out.dart_map.assign(dartLimit(), kNoFlag);
    out.vertex_map.assign(vertex_count_, kNoFlag);
    std::uint32_t next_vertex = 0;
    for (Dart d = 0; d < dartLimit(); ++d)
      if (alive_[d] && out.vertex_map[origin_[d]] == kNoFlag)
        out.vertex_map[origin_[d]] = 0;  // provisional: vertex in use
    for (std::uint32_t v = 0; v < vertex_count_; ++v)
      if (out.vertex_map[v] != kNoFlag) out.vertex_map[v] = next_vertex++;
    Dart next_dart = 0;
    for (Dart d = 0; d < dartLimit(); d += 2) {
      if (alive_[d] != alive_[twin(d)])
        throw Error(Err::InternalDegeneracy, "half-retired edge at dart", d);
      if (!alive_[d]) continue;
      out.dart_map[d] = next_dart++;
      out.dart_map[twin(d)] = next_dart++;
    }
    std::vector<Dart> rho(next_dart), rho_inv(next_dart);
    std::vector<std::uint32_t> origin(next_dart);
    for (Dart d = 0; d < dartLimit(); ++d) {
      if (!alive_[d]) continue;
      const Dart nd = out.dart_map[d];
      rho[nd] = out.dart_map[rho_[d]];
      rho_inv[nd] = out.dart_map[rho_inv_[d]];
      origin[nd] = out.vertex_map[origin_[d]];
    }
    rho_ = std::move(rho);
    rho_inv_ = std::move(rho_inv);
    origin_ = std::move(origin);
    alive_.assign(next_dart, 1);
    vertex_count_ = next_vertex;
    return out;
  }

 private:
  Dart check(Dart d) const {
    if (!alive(d))
      throw Error(Err::InternalDegeneracy, "dead or unknown dart " + std::to_string(d));
    return d;
  }

  std::vector<Dart> rho_, rho_inv_;
  std::vector<std::uint32_t> origin_;
  std::vector<std::uint8_t> alive_;
  std::uint32_t vertex_count_ = 0;
};

/// A rotation system together with the flag correspondence into its source
/// FlagMap: host flag f lives on dart dart_of[f], on side bit_of[f] (0 for
/// the reference orientation class).
struct HostedMap {
  RotationSystem rs;
  std::vector<Dart> dart_of;
  std::vector<std::uint8_t> bit_of;
};

/// Flag id that host flag f will carry after toFlagMap(h.rs).
inline Flag hostedFlag(const HostedMap& h, Flag f) {
  return 2 * h.dart_of[f] + h.bit_of[f];
}

/// Decompose an orientable map into a rotation system.  Darts 2e and 2e+1
/// are the two reference-side flags of edge e (smaller flag first); rho
/// follows s2 s1 inside the reference orientation class.
inline HostedMap fromFlagMap(const FlagMap& m) {
  const std::vector<signed char> cls = orientationClasses(m);
  const Cells c = cells(m);
  HostedMap h;
  h.dart_of.assign(m.flagCount(), kNoFlag);
  h.bit_of.assign(m.flagCount(), 0);
  for (std::uint32_t v = 0; v < c.vertexCount(); ++v) h.rs.addVertex();

  for (std::uint32_t e = 0; e < c.edgeCount(); ++e) {
    Flag f = c.edge_rep[e];
    if (cls[f] != 0) f = m.s2(f);
    const Flag g = m.s0(m.s2(f));  // the other reference-side flag of e
    const Flag lo = std::min(f, g);
    const Flag hi = std::max(f, g);
    const Dart d = h.rs.addEdge(c.vertex_of[lo], c.vertex_of[hi]);
    h.dart_of[lo] = d;
    h.dart_of[hi] = d + 1;
  }
  for (Flag f = 0; f < m.flagCount(); ++f)
    if (cls[f] != 0) {
      h.dart_of[f] = h.dart_of[m.s2(f)];
      h.bit_of[f] = 1;
    }

  for (std::uint32_t v = 0; v < c.vertexCount(); ++v) {
    Flag f = c.vertex_rep[v];
    if (cls[f] != 0) f = m.s2(f);
    std::vector<Dart> ccw;
    const Flag start = f;
    do {
      ccw.push_back(h.dart_of[f]);
      f = m.s2(m.s1(f));
    } while (f != start);
    h.rs.setRotation(v, ccw);
  }
  return h;
}

/// Rebuild a flag map: flags are 2d + side.  The result is orientable with
/// the side bit as its orientation class and carries no marks.
inline FlagMap toFlagMap(const RotationSystem& rs) {
  rs.validate();
  if (!rs.isCompact())
    throw Error(Err::InternalDegeneracy, "retired darts present; compact first");
  for (std::uint32_t v = 0; v < rs.vertexCount(); ++v)
    if (rs.vertexDarts(v).empty())
      throw Error(Err::InternalDegeneracy, "isolated vertex; compact first", v);

  const std::uint32_t n = 2 * rs.dartLimit();
  std::vector<Flag> s0(n), s1(n), s2(n);
  for (Dart d = 0; d < rs.dartLimit(); ++d) {
    s0[2 * d] = 2 * RotationSystem::twin(d) + 1;
    s0[2 * d + 1] = 2 * RotationSystem::twin(d);
    s2[2 * d] = 2 * d + 1;
    s2[2 * d + 1] = 2 * d;
    s1[2 * d] = 2 * rs.rho(d) + 1;
    s1[2 * d + 1] = 2 * rs.rhoInv(d);
  }
  return FlagMap(n, s0, s1, s2);
}

}  // namespace zmono

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "relmet/coarse.hpp"
#include "relmet/metric.hpp"

namespace relmet {

/// Total map between two ground sets.
struct SpaceMap {
  GroundSet source;
  GroundSet target;
  std::vector<unsigned> table;

  SpaceMap(GroundSet src, GroundSet tgt, std::vector<unsigned> t)
      : source(std::move(src)), target(std::move(tgt)), table(std::move(t)) {
    if (table.size() != source.size())
      throw std::invalid_argument("map table does not cover the source");
    for (unsigned v : table)
      if (v >= target.size()) throw std::out_of_range("map value out of range");
  }

  unsigned operator()(unsigned x) const { return table.at(x); }
};

/// Pairwise image (f x f)(r) on the target ground set.
inline Relation push_pairs(const SpaceMap& f, const Relation& r) {
  if (!r.ground().compatible(f.source)) throw CarrierMismatch("relation not on the source");
  std::vector<ElemSet> rows(f.target.size(), 0);
  for (unsigned i = 0; i < r.size(); ++i)
    for (unsigned j : elemset_elements(r.row(i)))
      rows[f(i)] |= ElemSet{1} << f(j);
  return Relation(f.target, std::move(rows));
}

/// Pairwise preimage (f x f)^{-1}(r) on the source ground set.
inline Relation pull_pairs(const SpaceMap& f, const Relation& r) {
  if (!r.ground().compatible(f.target)) throw CarrierMismatch("relation not on the target");
  std::vector<ElemSet> rows(f.source.size(), 0);
  for (unsigned i = 0; i < f.source.size(); ++i)
    for (unsigned j = 0; j < f.source.size(); ++j)
      if (r.test(f(i), f(j))) rows[i] |= ElemSet{1} << j;
  return Relation(f.source, std::move(rows));
}

/// (x,y) -> d(f(x), f(y)) over the target's index.
inline GenMetric pullback_metric(const SpaceMap& f, const GenMetric& dy) {
  if (!dy.ground().compatible(f.target)) throw CarrierMismatch("metric not on the target");
  unsigned n = f.source.size();
  std::vector<Ext> vals(static_cast<std::size_t>(n) * n);
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y) vals[x * n + y] = dy.at(f(x), f(y));
  return GenMetric(f.source, dy.index(), std::move(vals));
}

inline void require_induces(const CoarseStructure& s, const GenMetric& d) {
  if (!(induced_structure(d) == s))
    throw std::invalid_argument("metric does not induce the given structure");
}

/// Coarse connectedness: the metric never reaches the adjoined top. An index
/// element that happens to be maximal does not count; only the extension does.
inline bool is_coarsely_connected(const CoarseStructure& s, const GenMetric& d) {
  require_induces(s, d);
  for (unsigned x = 0; x < d.ground().size(); ++x)
    for (unsigned y = 0; y < d.ground().size(); ++y)
      if (d.at(x, y).is_inf()) return false;
  return true;
}

struct BoundWitness {
  unsigned center;
  unsigned radius;
};

/// A ball covering the set, when one exists.
inline std::optional<BoundWitness> bounded_witness(const CoarseStructure& s,
                                                   const GenMetric& d, ElemSet b) {
  require_induces(s, d);
  if (b == 0) throw std::invalid_argument("bounded_witness of the empty set");
  if (b & ~d.ground().all()) throw std::out_of_range("set element out of range");
  for (unsigned x = 0; x < d.ground().size(); ++x)
    for (unsigned a = 0; a < d.index().size(); ++a)
      if ((b & ~ball(d, x, a)) == 0) return BoundWitness{x, a};
  return std::nullopt;
}

enum class Verdict3 { yes, no, undetermined };

struct CheckResult {
  Verdict3 verdict;
  bool used_fallback;  // index hypothesis failed, monotone-map search used
};

namespace detail {

/// Is there an increasing map src -> tgt with level_src[a] inside
/// level_tgt[gamma(a)] throughout?
inline Verdict3 monotone_witness_exists(const Poset& src, const Poset& tgt,
                                        const std::vector<Relation>& need,
                                        const std::vector<Relation>& have) {
  if (src.size() > 5 || tgt.size() > 5) return Verdict3::undetermined;
  std::vector<unsigned> gamma(src.size(), 0);
  std::function<bool(unsigned)> assign = [&](unsigned pos) -> bool {
    if (pos == src.size()) return true;
    for (unsigned v = 0; v < tgt.size(); ++v) {
      if (!is_subset(need[pos], have[v])) continue;
      bool ok = true;
      for (unsigned a = 0; a < pos && ok; ++a) {
        if (src.leq(a, pos) && !tgt.leq(gamma[a], v)) ok = false;
        if (src.leq(pos, a) && !tgt.leq(v, gamma[a])) ok = false;
      }
      if (!ok) continue;
      gamma[pos] = v;
      if (assign(pos + 1)) return true;
    }
    return false;
  };
  return assign(0) ? Verdict3::yes : Verdict3::no;
}

}  // namespace detail

/// Images of source sublevels are controlled in the target. With a
/// meet-complete target index the sublevel scan settles it; otherwise only a
/// monotone-witness search can, and only for tiny indices.
inline CheckResult is_bornologous(const SpaceMap& f, const GenMetric& dx,
                                  const GenMetric& dy) {
  std::vector<Relation> pushed, levels;
  for (unsigned a = 0; a < dx.index().size(); ++a)
    pushed.push_back(push_pairs(f, entourage(dx, a)));
  for (unsigned b = 0; b < dy.index().size(); ++b) levels.push_back(entourage(dy, b));
  if (is_meet_complete(dy.index())) {
    for (const Relation& p : pushed) {
      bool found = false;
      for (const Relation& l : levels)
        if (is_subset(p, l)) {
          found = true;
          break;
        }
      if (!found) return {Verdict3::no, false};
    }
    return {Verdict3::yes, false};
  }
  return {detail::monotone_witness_exists(dx.index(), dy.index(), pushed, levels), true};
}

/// Preimages of target sublevels are controlled in the source.
inline CheckResult is_effectively_proper(const SpaceMap& f, const GenMetric& dx,
                                         const GenMetric& dy) {
  std::vector<Relation> pulled, levels;
  for (unsigned b = 0; b < dy.index().size(); ++b)
    pulled.push_back(pull_pairs(f, entourage(dy, b)));
  for (unsigned a = 0; a < dx.index().size(); ++a) levels.push_back(entourage(dx, a));
  if (is_meet_complete(dx.index())) {
    for (const Relation& p : pulled) {
      bool found = false;
      for (const Relation& l : levels)
        if (is_subset(p, l)) {
          found = true;
          break;
        }
      if (!found) return {Verdict3::no, false};
    }
    return {Verdict3::yes, false};
  }
  return {detail::monotone_witness_exists(dy.index(), dx.index(), pulled, levels), true};
}

/// Table sending each target ball to a source ball containing the preimage.
struct ProperWitness {
  std::vector<BoundWitness> table;  // indexed by y * |target index| + beta

  const BoundWitness& at(unsigned y, unsigned beta, const GenMetric& dy) const {
    return table.at(static_cast<std::size_t>(y) * dy.index().size() + beta);
  }
};

inline std::optional<ProperWitness> is_proper(const SpaceMap& f, const GenMetric& dx,
                                              const GenMetric& dy) {
  CoarseStructure sx = induced_structure(dx);
  ProperWitness w;
  for (unsigned y = 0; y < dy.ground().size(); ++y)
    for (unsigned b = 0; b < dy.index().size(); ++b) {
      ElemSet target_ball = ball(dy, y, b);
      ElemSet pre = 0;
      for (unsigned x = 0; x < f.source.size(); ++x)
        if (elemset_contains(target_ball, f(x))) pre |= ElemSet{1} << x;
      if (pre == 0) {
        w.table.push_back(BoundWitness{0, dx.index().zero_or_throw()});
        continue;
      }
      auto bw = bounded_witness(sx, dx, pre);
      if (!bw) return std::nullopt;
      w.table.push_back(*bw);
    }
  return w;
}

/// Least index bounding every pointwise distance between two maps, when one
/// exists; minimal elements are preferred, lowest index breaking ties.
inline std::optional<unsigned> closeness_bound(const SpaceMap& f, const SpaceMap& g,
                                               const GenMetric& dy) {
  if (!(f.source == g.source) || !(f.target == g.target))
    throw CarrierMismatch("maps do not share source and target");
  if (!dy.ground().compatible(f.target)) throw CarrierMismatch("metric not on the target");
  const Poset& j = dy.index();
  std::vector<bool> works(j.size(), true);
  for (unsigned x = 0; x < f.source.size(); ++x) {
    Ext v = dy.at(f(x), g(x));
    if (v.is_inf()) return std::nullopt;
    for (unsigned b = 0; b < j.size(); ++b)
      if (!j.leq(v.index(), b)) works[b] = false;
  }
  std::optional<unsigned> best;
  for (unsigned b = 0; b < j.size(); ++b) {
    if (!works[b]) continue;
    bool minimal = true;
    for (unsigned c = 0; c < j.size(); ++c)
      if (works[c] && c != b && j.leq(c, b) ) minimal = false;
    if (minimal) {
      best = b;
      break;
    }
  }
  return best;
}

/// Largest subset of s whose distinct points are pairwise unrelated by e, in
/// either direction. Exact branch and bound.
inline unsigned cap_number(const Relation& e, ElemSet s) {
  if (s & ~e.ground().all()) throw std::out_of_range("set element out of range");
  unsigned n = e.size();
  std::vector<ElemSet> adj(n, 0);
  for (unsigned u = 0; u < n; ++u) {
    for (unsigned v = 0; v < n; ++v)
      if (u != v && (e.test(u, v) || e.test(v, u))) adj[u] |= ElemSet{1} << v;
    adj[u] &= s;
  }
  unsigned best = 0;
  std::function<void(ElemSet, unsigned)> go = [&](ElemSet cand, unsigned size) {
    if (size + std::popcount(cand) <= best) return;
    if (!cand) {
      best = std::max(best, size);
      return;
    }
    unsigned u = static_cast<unsigned>(std::countr_zero(cand));
    go((cand & ~adj[u]) & ~(ElemSet{1} << u), size + 1);  // take u
    go(cand & ~(ElemSet{1} << u), size);                  // skip u
  };
  go(s, 0);
  return best;
}

/// Fewest rows of e whose images cover s; centers range over the whole
/// ground set. Empty result means no cover exists.
inline std::optional<unsigned> ent_number(const Relation& e, ElemSet s) {
  if (s & ~e.ground().all()) throw std::out_of_range("set element out of range");
  if (s == 0) return 0u;
  unsigned n = e.size();
  std::vector<ElemSet> cover;
  for (unsigned x = 0; x < n; ++x)
    if (e.row(x) & s) cover.push_back(e.row(x) & s);
  std::sort(cover.begin(), cover.end());
  cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
  ElemSet reach = 0;
  for (ElemSet c : cover) reach |= c;
  if (s & ~reach) return std::nullopt;
  unsigned max_cover = 1;
  for (ElemSet c : cover) max_cover = std::max<unsigned>(max_cover, std::popcount(c));
  unsigned best = static_cast<unsigned>(cover.size()) + 1;
  std::function<void(ElemSet, unsigned)> go = [&](ElemSet rest, unsigned used) {
    if (!rest) {
      best = std::min(best, used);
      return;
    }
    unsigned lower = (static_cast<unsigned>(std::popcount(rest)) + max_cover - 1) / max_cover;
    if (used + lower >= best) return;
    unsigned y = static_cast<unsigned>(std::countr_zero(rest));
    for (ElemSet c : cover)
      if (elemset_contains(c, y)) go(rest & ~c, used + 1);
  };
  go(s, 0);
  return best;
}

/// Largest family of pairwise disjoint relative balls of a given radius
/// inside one ball.
inline unsigned disjoint_relative_balls(const GenMetric& d, unsigned x, unsigned alpha,
                                        unsigned beta) {
  ElemSet outer = ball(d, x, alpha);
  std::vector<ElemSet> rel;
  for (unsigned y : elemset_elements(outer)) rel.push_back(outer & ball(d, y, beta));
  unsigned m = static_cast<unsigned>(rel.size());
  unsigned best = 0;
  std::function<void(unsigned, ElemSet, unsigned)> go = [&](unsigned k, ElemSet used,
                                                            unsigned size) {
    if (size + (m - k) <= best) return;
    if (k == m) {
      best = std::max(best, size);
      return;
    }
    if ((rel[k] & used) == 0) go(k + 1, used | rel[k], size + 1);
    go(k + 1, used, size);
  };
  go(0, 0, 0);
  return best;
}

/// Bounded-geometry verdicts with their witnesses. On a finite space all
/// four statements hold; the value of the report is the witness tables, the
/// capacity/cover sandwich and the bridge between the separation and
/// disjoint-ball formulations.
struct BoundedGeometryReport {
  // Per candidate radius w: the worst ball value over all centers and radii.
  std::vector<unsigned> separation;  // max cap_{D_w}(ball)
  std::vector<unsigned> disjoint;    // max pairwise-disjoint relative balls of radius w
  std::vector<unsigned> cover;       // max ent_{D_w}(ball)
  unsigned alpha1, n1;               // separation witness
  unsigned alpha2, n2;               // disjoint-ball witness
  unsigned alpha3, n3;               // cover witness
  bool b1, b2, b3, b4;
  bool sandwich_checked = false;     // exhaustive member/subset sweep ran
  bool sandwich_ok = false;
  bool bridge_ok = false;            // pointwise two-way bridge held
};

inline BoundedGeometryReport bounded_geometry_report(const CoarseStructure& s,
                                                     const GenMetric& d) {
  require_induces(s, d);
  auto cert = coarse_certificate(d);
  if (!cert) throw std::invalid_argument("metric admits no growth witness");
  unsigned n = d.ground().size();
  unsigned m = d.index().size();
  BoundedGeometryReport r;
  r.separation.assign(m, 0);
  r.disjoint.assign(m, 0);
  r.cover.assign(m, 0);
  std::vector<Relation> level;
  for (unsigned w = 0; w < m; ++w) level.push_back(entourage(d, w));
  for (unsigned w = 0; w < m; ++w)
    for (unsigned a = 0; a < m; ++a)
      for (unsigned x = 0; x < n; ++x) {
        ElemSet b = ball(d, x, a);
        r.separation[w] = std::max(r.separation[w], cap_number(level[w], b));
        r.disjoint[w] = std::max(r.disjoint[w], disjoint_relative_balls(d, x, a, w));
        auto cov = ent_number(level[w], b);
        // Sublevels are reflexive, so every ball is coverable.
        r.cover[w] = std::max(r.cover[w], *cov);
      }
  auto pick = [m](const std::vector<unsigned>& v, unsigned& arg, unsigned& val) {
    arg = 0;
    val = v[0];
    for (unsigned w = 1; w < m; ++w)
      if (v[w] < val) {
        val = v[w];
        arg = w;
      }
  };
  pick(r.separation, r.alpha1, r.n1);
  pick(r.disjoint, r.alpha2, r.n2);
  pick(r.cover, r.alpha3, r.n3);
  r.b1 = r.b2 = r.b3 = r.b4 = true;  // all witness values finite by computation
  // Two-way bridge, pointwise: disjoint balls at radius w never exceed the
  // separation at w, and separation at the grown radius never exceeds the
  // disjoint count.
  r.bridge_ok = true;
  for (unsigned w = 0; w < m && r.bridge_ok; ++w)
    for (unsigned a = 0; a < m && r.bridge_ok; ++a)
      for (unsigned x = 0; x < n; ++x) {
        ElemSet b = ball(d, x, a);
        unsigned dis = disjoint_relative_balls(d, x, a, w);
        if (dis > cap_number(level[w], b) ||
            cap_number(level[cert->phi[w]], b) > dis) {
          r.bridge_ok = false;
          break;
        }
      }
  if (n <= 5) {
    r.sandwich_checked = true;
    r.sandwich_ok = true;
    for (const Relation& e : s.sym_members()) {
      Relation ee = compose(e, e);
      for (ElemSet sub = 0; sub <= d.ground().all() && r.sandwich_ok; ++sub) {
        auto mid = ent_number(e, sub);
        if (!mid || cap_number(ee, sub) > *mid || *mid > cap_number(e, sub))
          r.sandwich_ok = false;
        if (sub == d.ground().all()) break;
      }
      if (!r.sandwich_ok) break;
    }
  }
  return r;
}

}  // namespace relmet

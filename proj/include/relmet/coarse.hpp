#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "relmet/metric.hpp"
#include "relmet/poset.hpp"
#include "relmet/relset.hpp"

namespace relmet {

namespace detail {

inline std::string pair_list(const Relation& r, std::size_t limit = 8) {
  std::ostringstream os;
  auto ps = r.pairs();
  os << "{";
  for (std::size_t k = 0; k < ps.size() && k < limit; ++k) {
    if (k) os << ",";
    os << "(" << ps[k].first << "," << ps[k].second << ")";
  }
  if (ps.size() > limit) os << ",...";
  os << "}";
  return os.str();
}

/// Unordered off-diagonal pairs {i<j} of a symmetric relation.
inline std::vector<std::pair<unsigned, unsigned>> sym_pairs(const Relation& r) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned i = 0; i < r.size(); ++i)
    for (unsigned j = i + 1; j < r.size(); ++j)
      if (r.test(i, j)) out.emplace_back(i, j);
  return out;
}

/// All symmetric reflexive subrelations of a symmetric reflexive relation,
/// in canonical order. Exponential in the pair count, hence capped.
inline std::vector<Relation> sym_refl_subsets(const Relation& top, unsigned cap) {
  auto ps = sym_pairs(top);
  if (ps.size() >= 32 || (1u << ps.size()) > cap)
    throw CapacityError("too many symmetric reflexive members to enumerate");
  std::vector<Relation> out;
  out.reserve(1u << ps.size());
  for (std::uint32_t mask = 0; mask < (1u << ps.size()); ++mask) {
    std::vector<ElemSet> rows = diagonal(top.ground()).rows();
    for (std::size_t k = 0; k < ps.size(); ++k)
      if ((mask >> k) & 1u) {
        rows[ps[k].first] |= ElemSet{1} << ps[k].second;
        rows[ps[k].second] |= ElemSet{1} << ps[k].first;
      }
    out.emplace_back(top.ground(), std::move(rows));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Coarse structure on a finite ground set. Because the member family is
/// closed under finite unions and subsets, it is determined by its largest
/// member, which is forced to be an equivalence relation; the symmetric
/// reflexive members are exactly the symmetric reflexive subrelations of
/// that top and are enumerated on demand rather than stored.
class CoarseStructure {
 public:
  /// Least coarse structure containing the generators (none yields the
  /// minimal structure). The fixpoint symmetrizes, unions and closes under
  /// products until stable.
  static CoarseStructure generate(const GroundSet& g, const std::vector<Relation>& generators) {
    Relation t = diagonal(g);
    for (const Relation& r : generators) {
      require_same_ground(t, r);
      t = rel_union(t, symmetrize_cup(r));
    }
    for (;;) {
      Relation grown = rel_union(t, compose(t, t));
      if (grown == t) break;
      t = std::move(grown);
    }
    return CoarseStructure(g, std::move(t));
  }

  /// Validate an explicitly listed family of symmetric reflexive members and
  /// adopt it. Returns the violation description instead of a structure when
  /// the family fails the closure axioms.
  static std::optional<std::string> validate_sym_members(const GroundSet& g,
                                                         const std::vector<Relation>& members) {
    if (members.empty()) return "family is empty";
    for (const Relation& m : members) {
      if (!m.ground().compatible(g)) return "member on a different ground set";
      if (!is_reflexive(m)) return "member " + detail::pair_list(m) + " is not reflexive";
      if (!is_symmetric(m)) return "member " + detail::pair_list(m) + " is not symmetric";
    }
    std::vector<Relation> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    auto member = [&](const Relation& r) {
      return std::binary_search(sorted.begin(), sorted.end(), r);
    };
    if (!member(diagonal(g))) return "family does not contain the diagonal";
    for (std::size_t a = 0; a < sorted.size(); ++a)
      for (std::size_t b = a + 1; b < sorted.size(); ++b)
        if (!member(rel_union(sorted[a], sorted[b])))
          return "union of members " + detail::pair_list(sorted[a]) + " and " +
                 detail::pair_list(sorted[b]) + " is missing";
    // Union closure makes the union of everything a member: the top.
    Relation top = sorted[0];
    for (const Relation& m : sorted) top = rel_union(top, m);
    if (!member(top)) return "family has no largest member";
    for (const Relation& m : sorted)
      if (!is_subset(symmetrize_cup(compose(m, m)), top))
        return "product of member " + detail::pair_list(m) + " with itself escapes the family";
    auto expected = detail::sym_refl_subsets(top, caps().enumeration);
    if (sorted.size() != expected.size()) {
      for (const Relation& s : expected)
        if (!member(s))
          return "family is not downward closed: missing " + detail::pair_list(s);
    }
    return std::nullopt;
  }

  static CoarseStructure from_sym_members(const GroundSet& g,
                                          const std::vector<Relation>& members) {
    if (auto bad = validate_sym_members(g, members))
      throw std::invalid_argument("not a coarse structure: " + *bad);
    Relation top = members[0];
    for (const Relation& m : members) top = rel_union(top, m);
    return CoarseStructure(g, std::move(top));
  }

  const GroundSet& ground() const { return ground_; }

  /// Largest member; always symmetric, reflexive and transitive.
  const Relation& top() const { return top_; }

  /// Controlled-set membership: the structure holds every subset of the top.
  bool contains(const Relation& r) const { return is_subset(r, top_); }

  bool contains_sym_member(const Relation& r) const {
    return contains(r) && is_reflexive(r) && is_symmetric(r);
  }

  /// log2 of the number of symmetric reflexive members.
  unsigned sym_member_count_log2() const {
    return static_cast<unsigned>(detail::sym_pairs(top_).size());
  }

  /// The full family of symmetric reflexive members, canonically ordered.
  std::vector<Relation> sym_members() const {
    return detail::sym_refl_subsets(top_, caps().enumeration);
  }

  friend bool operator==(const CoarseStructure& a, const CoarseStructure& b) {
    return a.ground_.compatible(b.ground_) && a.top_ == b.top_;
  }

 private:
  CoarseStructure(GroundSet g, Relation top) : ground_(std::move(g)), top_(std::move(top)) {}

  GroundSet ground_;
  Relation top_;
};

/// A metric together with a growth witness: composing a sublevel with itself
/// stays inside the sublevel the witness points to.
struct CoarseMetricCert {
  GenMetric metric;
  std::vector<unsigned> phi;
  bool increasing;  // witness verified increasing
  bool canonical;   // witness is the pointwise least one (meet-complete path)
};

inline bool check_growth_map(const GenMetric& d, const std::vector<unsigned>& phi) {
  if (phi.size() != d.index().size()) return false;
  for (unsigned a = 0; a < d.index().size(); ++a) {
    Relation da = entourage(d, a);
    if (!is_subset(compose(da, da), entourage(d, phi[a]))) return false;
  }
  return true;
}

namespace detail {

inline bool map_is_increasing(const Poset& src, const Poset& tgt,
                              const std::vector<unsigned>& table) {
  for (unsigned a = 0; a < src.size(); ++a)
    for (unsigned b = 0; b < src.size(); ++b)
      if (src.leq(a, b) && !tgt.leq(table[a], table[b])) return false;
  return true;
}

}  // namespace detail

/// Decide whether a semi-metric admits a growth witness. On a meet-complete
/// index the witness is the pointwise least one and comes out increasing; on
/// other indices any witness is accepted and its monotonicity is reported as
/// found.
inline std::optional<CoarseMetricCert> coarse_certificate(const GenMetric& d) {
  if (!is_semi_metric(d)) throw std::invalid_argument("not a semi-metric");
  const Poset& idx = d.index();
  if (!is_upward_directed(idx))
    throw std::invalid_argument("index poset is not upward directed");
  std::vector<Relation> level;
  level.reserve(idx.size());
  for (unsigned a = 0; a < idx.size(); ++a) level.push_back(entourage(d, a));
  std::vector<unsigned> phi(idx.size());
  if (is_meet_complete(idx)) {
    for (unsigned a = 0; a < idx.size(); ++a) {
      Relation sq = compose(level[a], level[a]);
      std::vector<unsigned> ok;
      for (unsigned b = 0; b < idx.size(); ++b)
        if (is_subset(sq, level[b])) ok.push_back(b);
      if (ok.empty()) return std::nullopt;
      phi[a] = *meet(idx, ok);
      // The least witness works: any value below every member of ok bounds
      // each composed distance, so the infimum does too.
      if (!is_subset(sq, level[phi[a]])) return std::nullopt;
    }
    return CoarseMetricCert{d, std::move(phi), true, true};
  }
  for (unsigned a = 0; a < idx.size(); ++a) {
    Relation sq = compose(level[a], level[a]);
    bool found = false;
    for (unsigned b = 0; b < idx.size(); ++b)
      if (is_subset(sq, level[b])) {
        phi[a] = b;
        found = true;
        break;
      }
    if (!found) return std::nullopt;
  }
  bool inc = detail::map_is_increasing(idx, idx, phi);
  return CoarseMetricCert{d, std::move(phi), inc, false};
}

/// Structure generated by all sublevels of a metric.
inline CoarseStructure induced_structure(const GenMetric& d) {
  std::vector<Relation> levels;
  for (unsigned a = 0; a < d.index().size(); ++a) levels.push_back(entourage(d, a));
  return CoarseStructure::generate(d.ground(), levels);
}

inline CoarseStructure structure_from_metric(const CoarseMetricCert& cert) {
  return induced_structure(cert.metric);
}

/// The canonical saturated metric of a structure: indexed by the inclusion
/// poset of all symmetric reflexive members, a related pair maps to the
/// least member containing it and an unrelated pair to the top extension.
struct SaturatedMetric {
  GenMetric metric;
  RelPoset index;
  MonotoneMap phi;  // member -> member composed with itself
};

inline SaturatedMetric saturated_metric(const CoarseStructure& s) {
  RelPoset rp = inclusion_poset(s.sym_members());
  unsigned n = s.ground().size();
  unsigned zero = rp.poset.zero_or_throw();
  std::vector<Ext> vals;
  vals.reserve(static_cast<std::size_t>(n) * n);
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y) {
      if (x == y) {
        vals.push_back(Ext::fin(zero));
      } else if (s.top().test(x, y)) {
        Relation r(s.ground(), {{x, y}, {y, x}});
        vals.push_back(Ext::fin(rp.index_of(rel_union(r, diagonal(s.ground())))));
      } else {
        vals.push_back(Ext::infinity());
      }
    }
  std::vector<unsigned> phi(rp.elems.size());
  for (unsigned e = 0; e < rp.elems.size(); ++e)
    phi[e] = rp.index_of(compose(rp.elems[e], rp.elems[e]));
  GenMetric d(s.ground(), rp.poset, std::move(vals));
  MonotoneMap pm(rp.poset, rp.poset, std::move(phi), true);
  return SaturatedMetric{std::move(d), std::move(rp), std::move(pm)};
}

/// Saturation: sublevel inclusion reflects the index order, and every
/// symmetric reflexive subset of a sublevel is itself a sublevel.
inline bool is_saturated(const GenMetric& d) {
  const Poset& idx = d.index();
  std::vector<Relation> level;
  for (unsigned a = 0; a < idx.size(); ++a) level.push_back(entourage(d, a));
  for (unsigned a = 0; a < idx.size(); ++a)
    for (unsigned b = 0; b < idx.size(); ++b)
      if (is_subset(level[a], level[b]) && !idx.leq(a, b)) return false;
  std::vector<Relation> sorted = level;
  std::sort(sorted.begin(), sorted.end());
  for (unsigned a = 0; a < idx.size(); ++a)
    for (const Relation& s : detail::sym_refl_subsets(level[a], caps().enumeration))
      if (!std::binary_search(sorted.begin(), sorted.end(), s)) return false;
  return true;
}

/// Symmetrize every member, then close under intersections of non-empty
/// subfamilies. Computed as a pairwise-intersection fixpoint, which reaches
/// the same family.
inline std::vector<Relation> sym_intersection_closure(const std::vector<Relation>& family) {
  if (family.empty()) throw std::invalid_argument("closure of empty family");
  std::vector<Relation> out;
  for (const Relation& a : family) out.push_back(symmetrize_cap(a));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (;;) {
    std::vector<Relation> fresh;
    for (std::size_t a = 0; a < out.size(); ++a)
      for (std::size_t b = a + 1; b < out.size(); ++b) {
        Relation m = rel_intersect(out[a], out[b]);
        if (!std::binary_search(out.begin(), out.end(), m)) fresh.push_back(m);
      }
    if (fresh.empty()) break;
    out.insert(out.end(), fresh.begin(), fresh.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() > caps().enumeration)
      throw CapacityError("intersection closure exceeds the enumeration cap");
  }
  return out;
}

/// Metric attached to a base of a coarse structure: indexed by the
/// intersection closure of the symmetrized base, a pair maps to the least
/// closure member containing it (top extension when none does).
struct BaseMetric {
  GenMetric metric;
  RelPoset index;
  MonotoneMap phi;
  CoarseStructure structure;
};

inline BaseMetric metric_from_base(const std::vector<Relation>& base) {
  if (base.empty()) throw std::invalid_argument("base is empty");
  const GroundSet& g = base[0].ground();
  CoarseStructure s = CoarseStructure::generate(g, base);
  // Every member of the structure must sit inside a base member; the largest
  // member makes that a concrete check.
  bool covers_top = false;
  for (const Relation& b : base)
    if (b == s.top()) covers_top = true;
  if (!covers_top)
    throw std::invalid_argument("family is not a base: no member covers " +
                                detail::pair_list(s.top()));
  std::vector<Relation> closure = sym_intersection_closure(base);
  RelPoset rp = inclusion_poset(closure);
  unsigned n = g.size();
  std::vector<Ext> vals;
  vals.reserve(static_cast<std::size_t>(n) * n);
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y) {
      std::optional<Relation> acc;
      for (const Relation& m : rp.elems)
        if (m.test(x, y)) acc = acc ? rel_intersect(*acc, m) : m;
      vals.push_back(acc ? Ext::fin(rp.index_of(*acc)) : Ext::infinity());
    }
  std::vector<unsigned> phi(rp.elems.size());
  for (unsigned e = 0; e < rp.elems.size(); ++e) {
    Relation sq = compose(rp.elems[e], rp.elems[e]);
    std::optional<Relation> acc;
    for (const Relation& m : rp.elems)
      if (is_subset(sq, m)) acc = acc ? rel_intersect(*acc, m) : m;
    phi[e] = rp.index_of(*acc);  // the top member always qualifies
  }
  GenMetric d(g, rp.poset, std::move(vals));
  MonotoneMap pm(rp.poset, rp.poset, std::move(phi), true);
  return BaseMetric{std::move(d), std::move(rp), std::move(pm), std::move(s)};
}

/// Increasing map witnessing that one metric bounds another through its
/// index translation.
inline std::optional<MonotoneMap> domination(const GenMetric& d, const GenMetric& dp) {
  if (!d.ground().compatible(dp.ground()))
    throw CarrierMismatch("metrics live on different ground sets");
  const Poset& tgt = d.index();
  const Poset& src = dp.index();
  std::vector<Relation> dl, dpl;
  for (unsigned a = 0; a < tgt.size(); ++a) dl.push_back(entourage(d, a));
  for (unsigned a = 0; a < src.size(); ++a) dpl.push_back(entourage(dp, a));
  if (is_meet_complete(tgt)) {
    std::vector<unsigned> gamma(src.size());
    for (unsigned ap = 0; ap < src.size(); ++ap) {
      std::vector<unsigned> ok;
      for (unsigned a = 0; a < tgt.size(); ++a)
        if (is_subset(dpl[ap], dl[a])) ok.push_back(a);
      if (ok.empty()) return std::nullopt;
      gamma[ap] = *meet(tgt, ok);
    }
    MonotoneMap m(src, tgt, std::move(gamma), true);
    // Verify the pointwise bound the witness promises.
    for (unsigned x = 0; x < d.ground().size(); ++x)
      for (unsigned y = 0; y < d.ground().size(); ++y)
        if (!ext_leq(d.at(x, y), m.apply_ext(dp.at(x, y)), tgt)) return std::nullopt;
    return m;
  }
  // Exhaustive search over increasing maps, feasible only for tiny indices.
  // For an increasing map the pointwise bound is equivalent to per-index
  // sublevel containment, which prunes the search.
  double space = 1;
  for (unsigned k = 0; k < src.size(); ++k) space *= tgt.size();
  if (space > 4e6)
    throw CapacityError("index posets too large for exhaustive witness search");
  std::vector<unsigned> gamma(src.size(), 0);
  std::function<bool(unsigned)> assign = [&](unsigned pos) -> bool {
    if (pos == src.size()) return true;
    for (unsigned v = 0; v < tgt.size(); ++v) {
      if (!is_subset(dpl[pos], dl[v])) continue;
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
  if (assign(0)) return MonotoneMap(src, tgt, gamma, true);
  return std::nullopt;
}

inline bool coarsely_equivalent(const GenMetric& d, const GenMetric& dp) {
  return domination(d, dp).has_value() && domination(dp, d).has_value();
}

/// Re-index a coarse metric over the poset of bounded downsets of its index,
/// ordered by inclusion. The result is meet-complete and generates the same
/// structure.
struct MeetCompletion {
  GenMetric metric;
  std::vector<ElemSet> downsets;  // element masks over the original index
  MonotoneMap embed;              // original index -> principal downset
  MonotoneMap phi;
};

inline MeetCompletion meet_completion(const CoarseMetricCert& cert) {
  const Poset& idx = cert.metric.index();
  unsigned m = idx.size();
  if (m > caps().completion)
    throw CapacityError("index poset too large for meet completion");
  auto principal = [&](unsigned a) {
    ElemSet s = 0;
    for (unsigned b : idx.below(a).elements()) s |= ElemSet{1} << b;
    return s;
  };
  std::vector<ElemSet> principals(m);
  for (unsigned a = 0; a < m; ++a) principals[a] = principal(a);
  std::vector<ElemSet> downsets;
  for (ElemSet s = 1; s < (ElemSet{1} << m); ++s) {
    bool down = true;
    for (unsigned a : elemset_elements(s))
      if ((principals[a] & ~s) != 0) down = false;
    if (!down) continue;
    bool bounded = false;
    for (unsigned a = 0; a < m && !bounded; ++a)
      if ((s & ~principals[a]) == 0) bounded = true;
    if (bounded) downsets.push_back(s);
  }
  unsigned dm = static_cast<unsigned>(downsets.size());
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned a = 0; a < dm; ++a)
    for (unsigned b = 0; b < dm; ++b)
      if (a != b && (downsets[a] & ~downsets[b]) == 0) pairs.emplace_back(a, b);
  Poset dp(dm, pairs);
  auto index_of = [&](ElemSet s) {
    auto it = std::lower_bound(downsets.begin(), downsets.end(), s);
    return static_cast<unsigned>(it - downsets.begin());
  };
  std::vector<unsigned> jmap(m);
  for (unsigned a = 0; a < m; ++a) jmap[a] = index_of(principals[a]);
  unsigned n = cert.metric.ground().size();
  std::vector<Ext> vals;
  vals.reserve(static_cast<std::size_t>(n) * n);
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y) {
      Ext v = cert.metric.at(x, y);
      vals.push_back(v.is_inf() ? Ext::infinity() : Ext::fin(jmap[v.index()]));
    }
  std::vector<unsigned> phi(dm);
  for (unsigned a = 0; a < dm; ++a) {
    ElemSet acc = ~ElemSet{0};
    for (unsigned b = 0; b < m; ++b)
      if ((downsets[a] & ~principals[b]) == 0) acc &= principals[cert.phi[b]];
    phi[a] = index_of(acc);
  }
  GenMetric md(cert.metric.ground(), dp, std::move(vals));
  MonotoneMap embed(idx, dp, std::move(jmap), true);
  MonotoneMap phim(dp, dp, std::move(phi), true);
  return MeetCompletion{std::move(md), std::move(downsets), std::move(embed), std::move(phim)};
}

}  // namespace relmet

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "relmet/coarse.hpp"
#include "relmet/metric.hpp"

namespace relmet {

/// Base of a uniform structure on a finite ground set. The generated filter
/// consists of all supersets of the intersection of the base, so the filter
/// axioms reduce to that intersection being an equivalence relation; they
/// are checked at construction. Finite filters are always principal, hence
/// every uniform structure here is trivial; the flag is still computed the
/// honest way because every construction branches on it.
class UniformBase {
 public:
  UniformBase(GroundSet g, std::vector<Relation> base)
      : ground_(std::move(g)), base_(std::move(base)), zero_(ground_) {
    if (base_.empty()) throw std::invalid_argument("uniform base is empty");
    for (const Relation& b : base_) {
      if (!b.ground().compatible(ground_))
        throw CarrierMismatch("base member on a different ground set");
      if (!is_subset(diagonal(ground_), b))
        throw std::invalid_argument("base member " + detail::pair_list(b) +
                                    " does not contain the diagonal");
    }
    Relation z = base_[0];
    for (const Relation& b : base_) z = rel_intersect(z, b);
    zero_ = z;
    // Filter-level axioms: the least filter member must refine every
    // member's inverse and compose into every member.
    for (const Relation& b : base_)
      if (!is_subset(zero_, inverse(b)))
        throw std::invalid_argument("no entourage refines the inverse of member " +
                                    detail::pair_list(b));
    Relation zz = compose(zero_, zero_);
    for (const Relation& b : base_)
      if (!is_subset(zz, b))
        throw std::invalid_argument("no entourage composes into member " +
                                    detail::pair_list(b));
  }

  const GroundSet& ground() const { return ground_; }
  const std::vector<Relation>& base() const { return base_; }

  /// Intersection of the generated filter.
  const Relation& zero() const { return zero_; }

  bool filter_contains(const Relation& r) const {
    return r.ground().compatible(ground_) && is_subset(zero_, r);
  }

  /// Principal iff the intersection itself belongs to the filter; immediate
  /// on finite ground sets.
  bool trivial() const { return filter_contains(zero_); }

  bool same_filter(const UniformBase& o) const {
    return ground_.compatible(o.ground_) && zero_ == o.zero_;
  }

 private:
  GroundSet ground_;
  std::vector<Relation> base_;
  Relation zero_;
};

/// The generated filter, presented by its minimal members and a membership
/// predicate. Finite filters have a single minimal member.
struct UniformFilter {
  std::vector<Relation> minimal;

  bool contains(const Relation& r) const {
    for (const Relation& m : minimal)
      if (is_subset(m, r)) return true;
    return false;
  }
};

inline UniformFilter generated_filter(const UniformBase& ub) {
  // Minimal members of the intersection closure of the base.
  std::vector<Relation> closed = ub.base();
  std::sort(closed.begin(), closed.end());
  closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
  for (;;) {
    std::vector<Relation> fresh;
    for (std::size_t a = 0; a < closed.size(); ++a)
      for (std::size_t b = a + 1; b < closed.size(); ++b) {
        Relation m = rel_intersect(closed[a], closed[b]);
        if (!std::binary_search(closed.begin(), closed.end(), m)) fresh.push_back(m);
      }
    if (fresh.empty()) break;
    closed.insert(closed.end(), fresh.begin(), fresh.end());
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
  }
  std::vector<Relation> minimal;
  for (const Relation& c : closed) {
    bool is_min = true;
    for (const Relation& o : closed)
      if (!(o == c) && is_subset(o, c)) is_min = false;
    if (is_min) minimal.push_back(c);
  }
  return UniformFilter{std::move(minimal)};
}

inline std::pair<Relation, bool> zero_and_triviality(const UniformBase& ub) {
  return {ub.zero(), ub.trivial()};
}

/// Two-valued metric of a principal filter, spread over a three-element
/// chain so that the filter's intersection appears as a genuine sublevel
/// strictly between zero and the top. Pairs inside the intersection sit at
/// zero, everything else at the top index.
inline GenMetric trivial_metric(const UniformBase& ub) {
  if (!ub.trivial())
    throw std::invalid_argument("metric construction requires a principal filter");
  unsigned n = ub.ground().size();
  std::vector<Ext> vals(static_cast<std::size_t>(n) * n);
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y)
      vals[static_cast<std::size_t>(x) * n + y] =
          ub.zero().test(x, y) ? Ext::fin(0) : Ext::fin(2);
  return GenMetric(ub.ground(), Poset::chain(3), std::move(vals));
}

/// A metric with a descent witness: the sublevel the witness picks composes
/// into the requested one. The witness avoids the zero index by definition.
struct DescentCert {
  GenMetric metric;
  std::vector<unsigned> psi;  // psi[zero] unused, set to zero
};

inline bool check_descent_map(const GenMetric& d, const std::vector<unsigned>& psi) {
  const Poset& idx = d.index();
  unsigned zero = idx.zero_or_throw();
  if (psi.size() != idx.size()) return false;
  for (unsigned b = 0; b < idx.size(); ++b) {
    if (b == zero) continue;
    if (psi[b] == zero) return false;
    Relation w = entourage(d, psi[b]);
    if (!is_subset(compose(w, w), entourage(d, b))) return false;
  }
  return true;
}

inline std::optional<DescentCert> descent_certificate(const GenMetric& d) {
  if (!is_semi_metric(d)) throw std::invalid_argument("not a semi-metric");
  const Poset& idx = d.index();
  if (!is_d_index(idx))
    throw std::invalid_argument("index poset is not a D-index set");
  unsigned zero = idx.zero_or_throw();
  std::vector<Relation> level;
  for (unsigned a = 0; a < idx.size(); ++a) level.push_back(entourage(d, a));
  std::vector<unsigned> psi(idx.size(), zero);
  for (unsigned b = 0; b < idx.size(); ++b) {
    if (b == zero) continue;
    bool found = false;
    for (unsigned w = 0; w < idx.size() && !found; ++w) {
      if (w == zero) continue;
      if (is_subset(compose(level[w], level[w]), level[b])) {
        psi[b] = w;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return DescentCert{d, std::move(psi)};
}

/// The nonzero sublevels intersect down to the diagonal.
inline bool is_uniform_metric(const DescentCert& cert) {
  const GenMetric& d = cert.metric;
  unsigned zero = d.index().zero_or_throw();
  Relation acc = full_relation(d.ground());
  for (unsigned a = 0; a < d.index().size(); ++a)
    if (a != zero) acc = rel_intersect(acc, entourage(d, a));
  return acc == diagonal(d.ground());
}

/// Zero distance forces equality. Equivalent to the uniform-metric condition
/// when the nonzero indices have no smallest element, which finite D-indices
/// always do; kept separate so both criteria stay observable.
inline bool zero_separates(const GenMetric& d) {
  unsigned zero = d.index().zero_or_throw();
  for (unsigned x = 0; x < d.ground().size(); ++x)
    for (unsigned y = 0; y < d.ground().size(); ++y)
      if (x != y && d.at(x, y) == Ext::fin(zero)) return false;
  return true;
}

struct InducedUniformity {
  UniformBase base;
  bool hausdorff;
};

/// Base of the uniformity induced by a pseudo uniform metric: the nonzero
/// sublevels. Hausdorff iff the metric is a uniform metric.
inline InducedUniformity uniformity_from_metric(const DescentCert& cert) {
  const GenMetric& d = cert.metric;
  unsigned zero = d.index().zero_or_throw();
  std::vector<Relation> base;
  for (unsigned a = 0; a < d.index().size(); ++a)
    if (a != zero) base.push_back(entourage(d, a));
  return InducedUniformity{UniformBase(d.ground(), std::move(base)), is_uniform_metric(cert)};
}

/// Filter generated by every sublevel including the zero one. On principal
/// filters the zero sublevel is itself an entourage, so this is the right
/// regeneration target for round trips; the nonzero-only base above matches
/// the induced uniformity in the non-principal reading.
inline UniformBase filter_from_all_sublevels(const GenMetric& d) {
  std::vector<Relation> base;
  for (unsigned a = 0; a < d.index().size(); ++a) base.push_back(entourage(d, a));
  return UniformBase(d.ground(), std::move(base));
}

/// Intersection-refine a base and drop the filter's intersection from it.
struct RefinedBase {
  std::vector<Relation> members;
  bool members_in_filter;  // the refined members all belong to the filter
  bool is_base;            // they still refine every filter member
};

inline RefinedBase intersection_refined_base(const UniformBase& ub,
                                             const std::vector<Relation>& a) {
  UniformFilter filter = generated_filter(ub);
  bool contains_zero = false;
  for (const Relation& m : a) {
    if (!ub.filter_contains(m))
      throw std::invalid_argument("not a base: member " + detail::pair_list(m) +
                                  " is outside the filter");
    if (m == ub.zero()) contains_zero = true;
  }
  if (!contains_zero)
    throw std::invalid_argument("not a base: no member refines the filter's intersection " +
                                detail::pair_list(ub.zero()));
  // Hypothesis: for every pair outside the intersection, the members
  // containing it intersect to a filter member.
  for (unsigned x = 0; x < ub.ground().size(); ++x)
    for (unsigned y = 0; y < ub.ground().size(); ++y) {
      if (ub.zero().test(x, y)) continue;
      std::optional<Relation> acc;
      for (const Relation& m : a)
        if (m.test(x, y)) acc = acc ? rel_intersect(*acc, m) : m;
      if (acc && !ub.filter_contains(*acc))
        throw std::invalid_argument("base violates the intersection hypothesis at pair (" +
                                    std::to_string(x) + "," + std::to_string(y) + ")");
    }
  std::vector<Relation> closed = sym_intersection_closure(a);
  std::vector<Relation> members;
  for (const Relation& c : closed)
    if (!(c == ub.zero())) members.push_back(c);
  if (members.empty())
    throw std::invalid_argument("refined base is empty: the filter is degenerate");
  bool in_filter = true;
  for (const Relation& m : members)
    if (!ub.filter_contains(m)) in_filter = false;
  bool base_flag = true;
  for (const Relation& f : filter.minimal) {
    bool refined = false;
    for (const Relation& m : members)
      if (is_subset(m, f)) refined = true;
    if (!refined) base_flag = false;
  }
  return RefinedBase{std::move(members), in_filter, base_flag};
}

/// Metric of an intersection-closed base: a pair maps to the least
/// symmetrized base member containing it. The sublevel at every index is
/// that index's relation, which is what ties the filter to the metric.
struct UniformMetric {
  GenMetric metric;
  RelPoset index;
  std::optional<std::vector<unsigned>> psi;  // absent when only the zero member descends
  bool sublevel_identity;                    // sublevel(S) == S verified for every S
};

inline UniformMetric metric_from_uniform_base(const UniformBase& ub,
                                              const std::vector<Relation>& b) {
  if (b.empty()) throw std::invalid_argument("base is empty");
  bool contains_zero = false;
  for (const Relation& m : b) {
    if (!ub.filter_contains(m))
      throw std::invalid_argument("not a base: member " + detail::pair_list(m) +
                                  " is outside the filter");
    if (m == ub.zero()) contains_zero = true;
  }
  if (!contains_zero)
    throw std::invalid_argument("not a base: no member refines the filter's intersection " +
                                detail::pair_list(ub.zero()));
  // Closure under arbitrary intersections, checked pairwise (equivalent on
  // finite families).
  std::vector<Relation> sorted = b;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      Relation m = rel_intersect(sorted[i], sorted[j]);
      if (!(m == ub.zero()) && !std::binary_search(sorted.begin(), sorted.end(), m))
        throw std::invalid_argument("base is not intersection-closed: members " +
                                    detail::pair_list(sorted[i]) + " and " +
                                    detail::pair_list(sorted[j]) + " witness the failure");
    }
  // Symmetrized members inherit the closure.
  std::vector<Relation> bs;
  for (const Relation& m : sorted) bs.push_back(symmetrize_cap(m));
  bs.push_back(ub.zero());
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  RelPoset rp = inclusion_poset(bs);
  unsigned n = ub.ground().size();
  std::vector<Ext> vals(static_cast<std::size_t>(n) * n);
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y) {
      std::optional<Relation> acc;
      for (const Relation& m : rp.elems)
        if (m.test(x, y)) acc = acc ? rel_intersect(*acc, m) : m;
      vals[static_cast<std::size_t>(x) * n + y] =
          acc ? Ext::fin(rp.index_of(*acc)) : Ext::infinity();
    }
  GenMetric d(ub.ground(), rp.poset, std::move(vals));
  bool identity = true;
  for (unsigned s = 0; s < rp.elems.size(); ++s)
    if (!(entourage(d, s) == rp.elems[s])) identity = false;
  unsigned zero = rp.poset.zero_or_throw();
  std::vector<unsigned> psi(rp.elems.size(), zero);
  bool complete = rp.elems.size() > 1;
  for (unsigned s = 0; s < rp.elems.size() && complete; ++s) {
    if (s == zero) continue;
    bool found = false;
    for (unsigned w = 0; w < rp.elems.size() && !found; ++w) {
      if (w == zero) continue;
      if (is_subset(compose(rp.elems[w], rp.elems[w]), rp.elems[s])) {
        psi[s] = w;
        found = true;
      }
    }
    if (!found) complete = false;
  }
  std::optional<std::vector<unsigned>> psi_out;
  if (complete) psi_out = std::move(psi);
  return UniformMetric{std::move(d), std::move(rp), std::move(psi_out), identity};
}

/// A base whose symmetrization together with the filter's intersection is
/// closed under arbitrary intersections. On finite ground sets the
/// intersection closure of any base qualifies, so one always exists.
inline std::vector<Relation> intersection_closed_base(const UniformBase& ub) {
  std::vector<Relation> closed = sym_intersection_closure(ub.base());
  if (!std::binary_search(closed.begin(), closed.end(), ub.zero())) {
    closed.push_back(ub.zero());
    std::sort(closed.begin(), closed.end());
  }
  return closed;
}

/// Route a totally ordered base through intersection refinement and the
/// base-metric construction; the index is the refined chain with the
/// filter's intersection as its zero.
inline UniformMetric metric_from_chain_base(const UniformBase& ub,
                                            const std::vector<Relation>& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!is_subset(a[i], a[j]) && !is_subset(a[j], a[i]))
        throw std::invalid_argument("base is not totally ordered: members " +
                                    detail::pair_list(a[i]) + " and " +
                                    detail::pair_list(a[j]) + " are incomparable");
  RefinedBase refined = intersection_refined_base(ub, a);
  std::vector<Relation> chain = refined.members;
  chain.push_back(ub.zero());
  return metric_from_uniform_base(ub, chain);
}

}  // namespace relmet

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relmet/coarse.hpp"
#include "relmet/metric.hpp"

namespace relmet {

/// The 2^n - 1 non-empty subsets of a ground set as a derived ground set,
/// ordered by their bitmask value.
class Hyperspace {
 public:
  explicit Hyperspace(GroundSet base)
      : base_(std::move(base)), derived_(make_derived(base_)) {}

  const GroundSet& base() const { return base_; }
  const GroundSet& derived() const { return derived_; }

  ElemSet set_of(unsigned derived_elem) const { return derived_elem + 1; }
  unsigned elem_of(ElemSet mask) const {
    if (mask == 0 || mask > base_.all()) throw std::out_of_range("not a non-empty subset");
    return static_cast<unsigned>(mask - 1);
  }

 private:
  static GroundSet make_derived(const GroundSet& b) {
    if (b.size() > caps().hyperspace || b.size() > 6)
      throw CapacityError("ground set too large for hyperspace constructions");
    unsigned m = (1u << b.size()) - 1;
    std::vector<std::string> labels;
    labels.reserve(m);
    for (ElemSet mask = 1; mask <= b.all(); ++mask) {
      std::string l = "{";
      bool first = true;
      for (unsigned x : elemset_elements(mask)) {
        if (!first) l += ",";
        l += b.label(x);
        first = false;
      }
      l += "}";
      labels.push_back(l);
    }
    return GroundSet(m, std::move(labels));
  }

  GroundSet base_;
  GroundSet derived_;
};

/// Lift an entourage to subsets: two subsets are related when each sits
/// inside the image of the other.
inline Relation hausdorff_lift(const Hyperspace& h, const Relation& e) {
  if (!e.ground().compatible(h.base())) throw CarrierMismatch("relation not on the base");
  unsigned m = h.derived().size();
  std::vector<ElemSet> img(m + 1, 0);
  for (ElemSet mask = 1; mask <= h.base().all(); ++mask) img[mask] = image(e, mask);
  std::vector<ElemSet> rows(m, 0);
  for (unsigned r = 0; r < m; ++r)
    for (unsigned s = 0; s < m; ++s) {
      ElemSet rm = h.set_of(r), sm = h.set_of(s);
      if ((rm & ~img[sm]) == 0 && (sm & ~img[rm]) == 0) rows[r] |= ElemSet{1} << s;
    }
  return Relation(h.derived(), std::move(rows));
}

/// Structure on the hyperspace generated by the lifts of every symmetric
/// reflexive member.
inline CoarseStructure hausdorff_structure(const Hyperspace& h, const CoarseStructure& s) {
  std::vector<Relation> gens;
  for (const Relation& e : s.sym_members()) gens.push_back(hausdorff_lift(h, e));
  return CoarseStructure::generate(h.derived(), gens);
}

/// Same structure from a base: lifting a base of the structure suffices.
inline CoarseStructure hausdorff_structure_from_base(const Hyperspace& h,
                                                     const std::vector<Relation>& base) {
  std::vector<Relation> gens;
  for (const Relation& b : base) gens.push_back(hausdorff_lift(h, symmetrize_cap(b)));
  return CoarseStructure::generate(h.derived(), gens);
}

/// Distance between subsets: the least index whose balls around one set
/// cover the other, both ways. Needs a meet-complete index for the infimum;
/// a growth witness is constructed only over totally ordered indices, where
/// stepping one index up makes the triangle argument work.
struct HausdorffMetric {
  GenMetric metric;
  std::optional<std::vector<unsigned>> phi;  // growth witness when certified
};

inline HausdorffMetric hausdorff_metric(const Hyperspace& h, const GenMetric& d) {
  if (!d.ground().compatible(h.base())) throw CarrierMismatch("metric not on the base");
  const Poset& idx = d.index();
  if (!is_meet_complete(idx))
    throw std::invalid_argument("hausdorff metric needs a meet-complete index");
  unsigned m = h.derived().size();
  std::vector<Relation> lifted;
  for (unsigned a = 0; a < idx.size(); ++a)
    lifted.push_back(hausdorff_lift(h, entourage(d, a)));
  std::vector<Ext> vals(static_cast<std::size_t>(m) * m);
  for (unsigned r = 0; r < m; ++r)
    for (unsigned s = 0; s < m; ++s) {
      std::vector<unsigned> candidates;
      for (unsigned a = 0; a < idx.size(); ++a)
        if (lifted[a].test(r, s)) candidates.push_back(a);
      vals[static_cast<std::size_t>(r) * m + s] =
          candidates.empty() ? Ext::infinity() : Ext::fin(*meet(idx, candidates));
    }
  GenMetric dm(h.derived(), idx, std::move(vals));
  std::optional<std::vector<unsigned>> phi;
  if (is_totally_ordered(idx)) {
    auto cert = coarse_certificate(d);
    if (cert) {
      std::vector<unsigned> table(idx.size());
      for (unsigned a = 0; a < idx.size(); ++a) {
        std::optional<unsigned> succ;  // least strict upper bound in the chain
        for (unsigned b = 0; b < idx.size(); ++b)
          if (b != a && idx.leq(a, b) && (!succ || idx.leq(b, *succ))) succ = b;
        table[a] = succ ? cert->phi[*succ] : a;
      }
      if (check_growth_map(dm, table)) phi = std::move(table);
    }
  }
  return HausdorffMetric{std::move(dm), std::move(phi)};
}

/// Does the structure induced by the subset distance coincide with the
/// lifted structure? Decidable here only over meet-complete totally ordered
/// indices; the mismatch witness is a pair of subsets related in exactly one
/// of the two structures.
struct AgreementVerdict {
  bool equal;
  std::optional<std::pair<ElemSet, ElemSet>> differing;
};

inline AgreementVerdict hausdorff_agreement(const Hyperspace& h, const CoarseMetricCert& cert) {
  const Poset& idx = cert.metric.index();
  if (!is_meet_complete(idx) || !is_totally_ordered(idx))
    throw std::invalid_argument("agreement check needs a meet-complete totally ordered index");
  CoarseStructure base_structure = structure_from_metric(cert);
  CoarseStructure lifted = hausdorff_structure(h, base_structure);
  HausdorffMetric hm = hausdorff_metric(h, cert.metric);
  CoarseStructure induced = induced_structure(hm.metric);
  if (induced == lifted) return {true, std::nullopt};
  for (unsigned r = 0; r < h.derived().size(); ++r)
    for (unsigned s = 0; s < h.derived().size(); ++s)
      if (induced.top().test(r, s) != lifted.top().test(r, s))
        return {false, std::make_pair(h.set_of(r), h.set_of(s))};
  return {false, std::nullopt};
}

/// Exhaustive experiment over meet-complete non-totally-ordered indices:
/// does the subset distance always admit a growth witness, and does it
/// always induce the lifted structure? Both are open in general, so the
/// outcome is reported, never asserted.
struct SearchWitness {
  Poset index;
  GenMetric metric;
};

struct SearchOutcome {
  bool completed = true;  // pool exhausted within the step budget
  std::uint64_t posets_used = 0;
  std::uint64_t posets_skipped = 0;  // pool entries failing the hypotheses
  std::uint64_t metrics_tested = 0;
  std::uint64_t coarse_tested = 0;
  std::optional<SearchWitness> growth_failure;     // no witness for the subset distance
  std::optional<SearchWitness> structure_failure;  // induced and lifted structures differ
};

inline SearchOutcome search_hausdorff_counterexample(unsigned n_max,
                                                     const std::vector<Poset>& pool,
                                                     std::uint64_t budget) {
  SearchOutcome out;
  for (const Poset& idx : pool) {
    bool qualifies = idx.zero().has_value() && is_upward_directed(idx) &&
                     is_meet_complete(idx) && !is_totally_ordered(idx);
    if (!qualifies) {
      ++out.posets_skipped;
      continue;
    }
    ++out.posets_used;
    for (unsigned n = 2; n <= n_max && n <= 3; ++n) {
      GroundSet g(n);
      Hyperspace h(g);
      std::vector<std::pair<unsigned, unsigned>> slots;
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) slots.emplace_back(i, j);
      unsigned options = idx.size() + 1;  // any index or the adjoined top
      std::vector<unsigned> pick(slots.size(), 0);
      for (;;) {
        if (out.metrics_tested >= budget) {
          out.completed = false;
          return out;
        }
        ++out.metrics_tested;
        std::vector<Ext> vals(static_cast<std::size_t>(n) * n, Ext::fin(idx.zero_or_throw()));
        for (std::size_t k = 0; k < slots.size(); ++k) {
          Ext v = pick[k] == idx.size() ? Ext::infinity() : Ext::fin(pick[k]);
          vals[slots[k].first * n + slots[k].second] = v;
          vals[slots[k].second * n + slots[k].first] = v;
        }
        GenMetric d(g, idx, vals);
        auto cert = coarse_certificate(d);
        if (cert) {
          ++out.coarse_tested;
          HausdorffMetric hm = hausdorff_metric(h, d);
          if (!out.growth_failure && !coarse_certificate(hm.metric))
            out.growth_failure = SearchWitness{idx, d};
          if (!out.structure_failure) {
            CoarseStructure lifted = hausdorff_structure(h, structure_from_metric(*cert));
            if (!(induced_structure(hm.metric) == lifted))
              out.structure_failure = SearchWitness{idx, d};
          }
          if (out.growth_failure && out.structure_failure) return out;
        }
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == options) pick[k++] = 0;
        if (k == pick.size()) break;
      }
    }
  }
  return out;
}

}  // namespace relmet

#include <doctest.h>

#include "helpers.hpp"
#include "relmet/hyperspace.hpp"

using namespace relmet;

namespace {

Relation pair_rel(const GroundSet& g, unsigned i, unsigned j) {
  return rel_union(diagonal(g), Relation(g, {{i, j}, {j, i}}));
}

Poset diamond() { return Poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

}  // namespace

TEST_CASE("hyperspace carrier") {
  Hyperspace h(GroundSet(3, {"a", "b", "c"}));
  CHECK(h.derived().size() == 7);
  CHECK(h.derived().label(h.elem_of(elemset_of({0, 1}))) == "{a,b}");
  CHECK(h.set_of(h.elem_of(5)) == 5);
  CHECK_THROWS_AS(Hyperspace(GroundSet(6)), CapacityError);
}

TEST_CASE("lift of the diagonal and of the full relation") {
  Hyperspace h(GroundSet(3));
  CHECK(hausdorff_lift(h, diagonal(h.base())) == diagonal(h.derived()));
  CHECK(hausdorff_lift(h, full_relation(h.base())) == full_relation(h.derived()));
}

TEST_CASE("lift membership on the worked example") {
  GroundSet g(3);
  Hyperspace h(g);
  Relation f = pair_rel(g, 0, 1);
  Relation lift = hausdorff_lift(h, f);
  CHECK(lift.test(h.elem_of(elemset_of({0})), h.elem_of(elemset_of({1}))));
  CHECK_FALSE(lift.test(h.elem_of(elemset_of({0})), h.elem_of(elemset_of({2}))));
  CHECK(lift.test(h.elem_of(elemset_of({0})), h.elem_of(elemset_of({0, 1}))));
}

TEST_CASE("lift is monotone and preserves symmetry and reflexivity") {
  GroundSet g(3);
  Hyperspace h(g);
  oracle::Rng rng(61);
  for (int t = 0; t < 30; ++t) {
    Relation e = symmetrize_cup(rng.relation(g));
    Relation f = rel_union(e, symmetrize_cup(rng.relation(g)));
    Relation le = hausdorff_lift(h, e), lf = hausdorff_lift(h, f);
    CHECK(is_subset(le, lf));
    CHECK(is_symmetric(le));
    CHECK(is_reflexive(le));
  }
}

TEST_CASE("hausdorff structure of the minimal structure is minimal") {
  GroundSet g(3);
  Hyperspace h(g);
  CoarseStructure s = CoarseStructure::generate(g, {});
  CHECK(hausdorff_structure(h, s).top() == diagonal(h.derived()));
}

TEST_CASE("hausdorff structure from members and from a base agree") {
  GroundSet g(3);
  Hyperspace h(g);
  oracle::Rng rng(62);
  for (const CoarseStructure& s : oracle::all_structures(g)) {
    CoarseStructure via_members = hausdorff_structure(h, s);
    CoarseStructure via_base = hausdorff_structure_from_base(h, {s.top()});
    CHECK(via_members == via_base);
    std::vector<Relation> base{s.top(), rng.sym_refl_inside(s.top())};
    CHECK(hausdorff_structure_from_base(h, base) == via_members);
  }
}

TEST_CASE("subset distance on a two-level chain") {
  GroundSet g(3);
  Hyperspace h(g);
  Relation f = pair_rel(g, 0, 1);
  BaseMetric bm = metric_from_base({f});
  HausdorffMetric hm = hausdorff_metric(h, bm.metric);
  unsigned zero = bm.index.poset.zero_or_throw();
  unsigned fi = bm.index.index_of(f);
  for (unsigned r = 0; r < h.derived().size(); ++r)
    CHECK(hm.metric.at(r, r) == Ext::fin(zero));
  CHECK(hm.metric.at(h.elem_of(1), h.elem_of(2)) == Ext::fin(fi));
  CHECK(hm.metric.at(h.elem_of(1), h.elem_of(4)).is_inf());
  CHECK(is_semi_metric(hm.metric));
  REQUIRE(hm.phi.has_value());
  CHECK(check_growth_map(hm.metric, *hm.phi));
}

TEST_CASE("subset distance needs a meet-complete index") {
  GroundSet g(2);
  Hyperspace h(g);
  // 0 < a,b < c,d: upward directed but some pairs have no meet. Too small a
  // ground to matter; only the precondition is under test.
  Poset idx(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}});
  std::vector<Ext> v(4, Ext::fin(0));
  v[1] = v[2] = Ext::fin(5);
  CHECK_THROWS_AS(hausdorff_metric(h, GenMetric(g, idx, v)), std::invalid_argument);
}

TEST_CASE("singleton embedding never exceeds the base distance") {
  GroundSet g(3);
  Hyperspace h(g);
  oracle::Rng rng(63);
  Poset dia = diamond();
  for (int t = 0; t < 25; ++t) {
    std::vector<Ext> v(9, Ext::fin(0));
    for (unsigned x = 0; x < 3; ++x)
      for (unsigned y = x + 1; y < 3; ++y) {
        unsigned p = rng.below(5);
        v[x * 3 + y] = v[y * 3 + x] = p == 4 ? Ext::infinity() : Ext::fin(p);
      }
    GenMetric d(g, dia, v);
    HausdorffMetric hm = hausdorff_metric(h, d);
    for (unsigned x = 0; x < 3; ++x)
      for (unsigned y = 0; y < 3; ++y) {
        Ext lifted = hm.metric.at(h.elem_of(ElemSet{1} << x), h.elem_of(ElemSet{1} << y));
        CHECK(ext_leq(lifted, d.at(x, y), dia));
      }
  }
}

TEST_CASE("singleton embedding is exact over totally ordered indices") {
  GroundSet g(4);
  Hyperspace h(g);
  oracle::Rng rng(64);
  for (int t = 0; t < 20; ++t) {
    Relation top = rng.equivalence(g);
    std::vector<Relation> base{top, rng.sym_refl_inside(top), rng.sym_refl_inside(top)};
    BaseMetric bm = metric_from_base(base);
    if (!is_totally_ordered(bm.index.poset)) continue;
    HausdorffMetric hm = hausdorff_metric(h, bm.metric);
    for (unsigned x = 0; x < 4; ++x)
      for (unsigned y = 0; y < 4; ++y)
        CHECK(hm.metric.at(h.elem_of(ElemSet{1} << x), h.elem_of(ElemSet{1} << y)) ==
              bm.metric.at(x, y));
  }
}

TEST_CASE("induced and lifted structures agree over chains") {
  GroundSet g(3);
  Hyperspace h(g);
  for (const CoarseStructure& s : oracle::all_structures(g)) {
    BaseMetric bm = metric_from_base({s.top()});
    auto cert = coarse_certificate(bm.metric);
    REQUIRE(cert.has_value());
    AgreementVerdict v = hausdorff_agreement(h, *cert);
    CHECK(v.equal);
    CHECK_FALSE(v.differing.has_value());
  }
}

TEST_CASE("agreement check rejects unordered indices") {
  GroundSet g(3);
  Hyperspace h(g);
  std::vector<Ext> v(9, Ext::fin(0));
  auto put = [&](unsigned x, unsigned y, Ext e) { v[x * 3 + y] = v[y * 3 + x] = e; };
  put(0, 1, Ext::fin(1));
  put(1, 2, Ext::fin(2));
  put(0, 2, Ext::fin(3));
  GenMetric d(g, diamond(), v);
  auto cert = coarse_certificate(d);
  REQUIRE(cert.has_value());
  CHECK_THROWS_AS(hausdorff_agreement(h, *cert), std::invalid_argument);
}

TEST_CASE("counterexample search terminates and reports") {
  // Empty pool: nothing to do.
  SearchOutcome none = search_hausdorff_counterexample(3, {}, 1000);
  CHECK(none.completed);
  CHECK(none.metrics_tested == 0);
  CHECK_FALSE(none.growth_failure.has_value());
  CHECK_FALSE(none.structure_failure.has_value());

  // Totally ordered pool entries are skipped: the hypotheses ask for
  // non-chains.
  SearchOutcome chains = search_hausdorff_counterexample(3, {Poset::chain(3)}, 1000);
  CHECK(chains.posets_skipped == 1);
  CHECK(chains.posets_used == 0);

  // The diamond qualifies; outcome is recorded, not asserted.
  SearchOutcome dia = search_hausdorff_counterexample(2, {diamond()}, 100000);
  CHECK(dia.completed);
  CHECK(dia.posets_used == 1);
  CHECK(dia.metrics_tested > 0);
  CHECK(dia.coarse_tested > 0);

  // A tiny budget stops the search early and says so.
  SearchOutcome cut = search_hausdorff_counterexample(3, {diamond()}, 5);
  CHECK_FALSE(cut.completed);
  CHECK(cut.metrics_tested == 5);
}

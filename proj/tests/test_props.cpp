#include <doctest.h>

#include "helpers.hpp"
#include "relmet/props.hpp"

using namespace relmet;

namespace {

Relation pair_rel(const GroundSet& g, unsigned i, unsigned j) {
  return rel_union(diagonal(g), Relation(g, {{i, j}, {j, i}}));
}

SpaceMap identity_map(const GroundSet& g) {
  std::vector<unsigned> t(g.size());
  for (unsigned i = 0; i < g.size(); ++i) t[i] = i;
  return SpaceMap(g, g, t);
}

// Structural one-liner oracles, phrased on the structures alone.
bool structural_bornologous(const SpaceMap& f, const CoarseStructure& sx,
                            const CoarseStructure& sy) {
  return is_subset(push_pairs(f, sx.top()), sy.top());
}

bool structural_effectively_proper(const SpaceMap& f, const CoarseStructure& sx,
                                   const CoarseStructure& sy) {
  return is_subset(pull_pairs(f, sy.top()), sx.top());
}

bool structural_proper(const SpaceMap& f, const CoarseStructure& sx,
                       const CoarseStructure& sy) {
  for (unsigned y = 0; y < sy.ground().size(); ++y) {
    ElemSet target_ball = image(sy.top(), ElemSet{1} << y);
    ElemSet pre = 0;
    for (unsigned x = 0; x < f.source.size(); ++x)
      if (elemset_contains(target_ball, f(x))) pre |= ElemSet{1} << x;
    if (pre == 0) continue;
    bool covered = false;
    for (unsigned x = 0; x < sx.ground().size() && !covered; ++x)
      if ((pre & ~image(sx.top(), ElemSet{1} << x)) == 0) covered = true;
    if (!covered) return false;
  }
  return true;
}

bool structural_close(const SpaceMap& f, const SpaceMap& g, const CoarseStructure& sy) {
  for (unsigned x = 0; x < f.source.size(); ++x)
    if (!sy.top().test(f(x), g(x))) return false;
  return true;
}

GenMetric cluster_metric(bool with_top_index) {
  GroundSet g(6);
  Poset idx = Poset::chain(with_top_index ? 4 : 3);
  std::vector<Ext> v(36);
  for (unsigned x = 0; x < 6; ++x)
    for (unsigned y = 0; y < 6; ++y) {
      bool same = (x < 3) == (y < 3);
      unsigned diff = x < y ? y - x : x - y;
      if (same)
        v[x * 6 + y] = Ext::fin(diff);
      else
        v[x * 6 + y] = with_top_index ? Ext::fin(3) : Ext::infinity();
    }
  return GenMetric(g, idx, v);
}

}  // namespace

TEST_CASE("coarse connectedness") {
  GroundSet g(4);
  CoarseStructure maximal = CoarseStructure::generate(g, {full_relation(g)});
  CHECK(is_coarsely_connected(maximal, saturated_metric(maximal).metric));

  CoarseStructure s = CoarseStructure::generate(g, {pair_rel(g, 0, 1)});
  GenMetric d = saturated_metric(s).metric;
  CHECK(d.at(0, 2).is_inf());
  CHECK_FALSE(is_coarsely_connected(s, d));
  CHECK_THROWS_AS(is_coarsely_connected(maximal, d), std::invalid_argument);
}

TEST_CASE("a maximal index element is not the adjoined top") {
  GenMetric plain = cluster_metric(false);
  GenMetric topped = cluster_metric(true);
  CHECK_FALSE(is_coarsely_connected(induced_structure(plain), plain));
  CHECK(is_coarsely_connected(induced_structure(topped), topped));
}

TEST_CASE("bounded sets") {
  GroundSet g(4);
  CoarseStructure s = CoarseStructure::generate(g, {pair_rel(g, 0, 1)});
  GenMetric d = saturated_metric(s).metric;
  auto singleton = bounded_witness(s, d, elemset_of({2}));
  REQUIRE(singleton.has_value());
  CHECK(singleton->center == 2);
  CHECK(singleton->radius == d.index().zero_or_throw());
  CHECK_FALSE(bounded_witness(s, d, elemset_of({0, 2})).has_value());

  CoarseStructure maximal = CoarseStructure::generate(g, {full_relation(g)});
  GenMetric dm = saturated_metric(maximal).metric;
  oracle::Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    ElemSet b = rng.below(15) + 1;
    auto w = bounded_witness(maximal, dm, b);
    REQUIRE(w.has_value());
    CHECK((b & ~ball(dm, w->center, w->radius)) == 0);
  }
  CHECK_THROWS_AS(bounded_witness(s, d, 0), std::invalid_argument);
}

TEST_CASE("bornologous: identity and constant maps") {
  GroundSet g(4);
  CoarseStructure s = CoarseStructure::generate(g, {pair_rel(g, 0, 1)});
  GenMetric d = saturated_metric(s).metric;
  CHECK(is_bornologous(identity_map(g), d, d).verdict == Verdict3::yes);

  SpaceMap constant(g, g, {1, 1, 1, 1});
  GenMetric dm = saturated_metric(CoarseStructure::generate(g, {full_relation(g)})).metric;
  CHECK(is_bornologous(constant, dm, d).verdict == Verdict3::yes);
}

TEST_CASE("bornologous: far pairs pulled close but not conversely") {
  GroundSet g(4);
  CoarseStructure sx = CoarseStructure::generate(g, {full_relation(g)});
  CoarseStructure sy = CoarseStructure::generate(g, {pair_rel(g, 0, 1)});
  GenMetric dx = saturated_metric(sx).metric;
  GenMetric dy = saturated_metric(sy).metric;
  SpaceMap f = identity_map(g);
  CHECK(is_bornologous(f, dx, dy).verdict == Verdict3::no);
  CHECK(is_bornologous(f, dy, dx).verdict == Verdict3::yes);
}

TEST_CASE("proper maps") {
  GroundSet g(4);
  CoarseStructure maximal = CoarseStructure::generate(g, {full_relation(g)});
  GenMetric dm = saturated_metric(maximal).metric;
  SpaceMap perm(g, g, {1, 0, 3, 2});
  CHECK(is_proper(perm, dm, dm).has_value());
  CHECK(is_proper(identity_map(g), dm, dm).has_value());

  CoarseStructure sx = CoarseStructure::generate(g, {pair_rel(g, 0, 1)});
  GenMetric dx = saturated_metric(sx).metric;
  SpaceMap constant(g, g, {1, 1, 1, 1});
  // Preimage of a ball around the target point is the whole disconnected
  // source: unbounded.
  CHECK_FALSE(is_proper(constant, dx, dm).has_value());
}

TEST_CASE("effectively proper") {
  GroundSet g(4);
  CoarseStructure maximal = CoarseStructure::generate(g, {full_relation(g)});
  CoarseStructure sy = CoarseStructure::generate(g, {pair_rel(g, 0, 1)});
  GenMetric dm = saturated_metric(maximal).metric;
  GenMetric dy = saturated_metric(sy).metric;
  CHECK(is_effectively_proper(identity_map(g), dm, dm).verdict == Verdict3::yes);
  // Reverse of the bornologous counterexample.
  CHECK(is_effectively_proper(identity_map(g), dm, dy).verdict == Verdict3::yes);
  CHECK(is_effectively_proper(identity_map(g), dy, dm).verdict == Verdict3::no);
  // Minimal target: some sublevel pulls back to everything.
  CoarseStructure minimal = CoarseStructure::generate(g, {});
  GenMetric dmin = saturated_metric(minimal).metric;
  SpaceMap constant(g, g, {0, 0, 0, 0});
  CHECK(is_effectively_proper(constant, dmin, dm).verdict == Verdict3::no);
}

TEST_CASE("map checkers fall back to witness search on incomplete indices") {
  GroundSet g(3);
  // 0 < a,b < c,d: not meet-complete, small enough for the monotone search.
  Poset idx(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});
  REQUIRE_FALSE(is_meet_complete(idx));
  std::vector<Ext> v(9, Ext::fin(0));
  auto put = [&](unsigned x, unsigned y, Ext e) { v[x * 3 + y] = v[y * 3 + x] = e; };
  put(0, 1, Ext::fin(1));
  put(1, 2, Ext::fin(2));
  put(0, 2, Ext::fin(3));
  GenMetric d(g, idx, v);
  SpaceMap id(g, g, {0, 1, 2});
  auto r = is_bornologous(id, d, d);
  CHECK(r.used_fallback);
  CHECK(r.verdict == Verdict3::yes);
  auto e = is_effectively_proper(id, d, d);
  CHECK(e.used_fallback);
  CHECK(e.verdict == Verdict3::yes);

  // Indices beyond the search size report undetermined.
  Poset big(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}});
  REQUIRE_FALSE(is_meet_complete(big));
  std::vector<Ext> w(9, Ext::fin(0));
  auto put2 = [&](unsigned x, unsigned y, Ext e2) { w[x * 3 + y] = w[y * 3 + x] = e2; };
  put2(0, 1, Ext::fin(1));
  put2(1, 2, Ext::fin(2));
  put2(0, 2, Ext::fin(5));
  GenMetric db(g, big, w);
  CHECK(is_bornologous(id, db, db).verdict == Verdict3::undetermined);
}

TEST_CASE("closeness") {
  GroundSet g(4);
  CoarseStructure s = CoarseStructure::generate(g, {pair_rel(g, 0, 1)});
  GenMetric d = saturated_metric(s).metric;
  SpaceMap f = identity_map(g);
  auto same = closeness_bound(f, f, d);
  REQUIRE(same.has_value());
  CHECK(*same == d.index().zero_or_throw());

  SpaceMap g2(g, g, {1, 0, 2, 3});
  auto b = closeness_bound(f, g2, d);
  REQUIRE(b.has_value());
  CHECK(d.index().leq(d.at(0, 1).index(), *b));

  SpaceMap far(g, g, {2, 1, 2, 3});
  CHECK_FALSE(closeness_bound(f, far, d).has_value());
}

TEST_CASE("metric checkers agree with structural definitions on random fixtures") {
  oracle::Rng rng(52);
  int undetermined = 0;
  for (int t = 0; t < 200; ++t) {
    unsigned nx = 2 + rng.below(3), ny = 2 + rng.below(3);
    GroundSet gx(nx), gy(ny);
    CoarseStructure sx = CoarseStructure::generate(gx, {rng.equivalence(gx)});
    CoarseStructure sy = CoarseStructure::generate(gy, {rng.equivalence(gy)});
    GenMetric dx = saturated_metric(sx).metric;
    GenMetric dy = saturated_metric(sy).metric;
    std::vector<unsigned> ft(nx), gt(nx);
    for (unsigned i = 0; i < nx; ++i) ft[i] = rng.below(ny), gt[i] = rng.below(ny);
    SpaceMap f(gx, gy, ft), h(gx, gy, gt);

    CHECK(is_coarsely_connected(sx, dx) == (sx.top() == full_relation(gx)));
    ElemSet b = rng.below((1u << nx) - 1) + 1;
    bool structurally_bounded = false;
    for (unsigned x = 0; x < nx; ++x)
      if ((b & ~image(sx.top(), ElemSet{1} << x)) == 0) structurally_bounded = true;
    CHECK(bounded_witness(sx, dx, b).has_value() == structurally_bounded);

    auto born = is_bornologous(f, dx, dy);
    REQUIRE(born.verdict != Verdict3::undetermined);
    CHECK((born.verdict == Verdict3::yes) == structural_bornologous(f, sx, sy));

    auto eff = is_effectively_proper(f, dx, dy);
    REQUIRE(eff.verdict != Verdict3::undetermined);
    CHECK((eff.verdict == Verdict3::yes) == structural_effectively_proper(f, sx, sy));

    CHECK(is_proper(f, dx, dy).has_value() == structural_proper(f, sx, sy));
    CHECK(closeness_bound(f, h, dy).has_value() == structural_close(f, h, sy));
    (void)undetermined;
  }
}

TEST_CASE("bornologous and effectively proper agree with domination of pullbacks") {
  oracle::Rng rng(53);
  for (int t = 0; t < 60; ++t) {
    unsigned n = 2 + rng.below(3);
    GroundSet g(n);
    CoarseStructure sx = CoarseStructure::generate(g, {rng.equivalence(g)});
    CoarseStructure sy = CoarseStructure::generate(g, {rng.equivalence(g)});
    GenMetric dx = saturated_metric(sx).metric;
    GenMetric dy = saturated_metric(sy).metric;
    std::vector<unsigned> ft(n);
    for (unsigned i = 0; i < n; ++i) ft[i] = rng.below(n);
    SpaceMap f(g, g, ft);
    GenMetric pulled = pullback_metric(f, dy);
    CHECK((is_bornologous(f, dx, dy).verdict == Verdict3::yes) ==
          domination(pulled, dx).has_value());
    CHECK((is_effectively_proper(f, dx, dy).verdict == Verdict3::yes) ==
          domination(dx, pulled).has_value());
  }
}

TEST_CASE("cap examples") {
  GroundSet g(4);
  CHECK(cap_number(full_relation(g), elemset_of({0, 1, 2})) == 1);
  CHECK(cap_number(diagonal(g), g.all()) == 4);
  Relation e = rel_union(pair_rel(g, 0, 1), pair_rel(g, 2, 3));
  CHECK(oracle::naive_cap(e, g.all()) == 2);
  CHECK(cap_number(e, g.all()) == 2);
}

TEST_CASE("ent examples") {
  GroundSet g(4);
  CHECK(ent_number(diagonal(g), 0) == 0u);
  Relation e = rel_union(pair_rel(g, 0, 1), pair_rel(g, 2, 3));
  CHECK(oracle::naive_ent(e, g.all()) == 2);
  CHECK(ent_number(e, g.all()) == 2u);
  // A point outside every row image is uncoverable.
  Relation partial(g, {{0, 0}, {0, 1}});
  CHECK_FALSE(ent_number(partial, elemset_of({2})).has_value());
}

TEST_CASE("cap and ent match the subset-scan oracles") {
  GroundSet g(4);
  oracle::Rng rng(54);
  for (int t = 0; t < 80; ++t) {
    Relation e = rng.relation(g);
    ElemSet s = rng.below(16);
    CHECK(cap_number(e, s) == oracle::naive_cap(e, s));
    auto mine = ent_number(e, s);
    int naive = oracle::naive_ent(e, s);
    if (naive < 0)
      CHECK_FALSE(mine.has_value());
    else
      CHECK(mine == static_cast<unsigned>(naive));
  }
}

TEST_CASE("cap monotonicity") {
  GroundSet g(4);
  oracle::Rng rng(55);
  for (int t = 0; t < 60; ++t) {
    Relation e = rng.relation(g);
    Relation bigger = rel_union(e, rng.relation(g));
    ElemSet s = rng.below(16);
    ElemSet s2 = s | rng.below(16);
    CHECK(cap_number(bigger, s) <= cap_number(e, s));
    CHECK(cap_number(e, s) <= cap_number(e, s2));
  }
}

TEST_CASE("capacity-cover sandwich, exhaustive on five points") {
  GroundSet g(5);
  for (const Relation& e : oracle::all_sym_refl(g)) {
    Relation ee = compose(e, e);
    for (ElemSet s = 0; s <= g.all(); ++s) {
      auto mid = ent_number(e, s);
      REQUIRE(mid.has_value());
      CHECK(cap_number(ee, s) <= *mid);
      CHECK(*mid <= cap_number(e, s));
    }
  }
}

TEST_CASE("bounded geometry report on the minimal structure") {
  GroundSet g(3);
  CoarseStructure s = CoarseStructure::generate(g, {});
  GenMetric d = saturated_metric(s).metric;
  BoundedGeometryReport r = bounded_geometry_report(s, d);
  CHECK(r.b1);
  CHECK(r.b2);
  CHECK(r.b3);
  CHECK(r.b4);
  CHECK(r.n1 == 1);
  CHECK(r.n2 == 1);
  CHECK(r.n3 == 1);
  CHECK(r.sandwich_checked);
  CHECK(r.sandwich_ok);
  CHECK(r.bridge_ok);
}

TEST_CASE("bounded geometry report on the pairing structure") {
  GroundSet g(4);
  Relation top = rel_union(pair_rel(g, 0, 1), pair_rel(g, 2, 3));
  CoarseStructure s = CoarseStructure::generate(g, {top});
  SaturatedMetric sm = saturated_metric(s);
  BoundedGeometryReport r = bounded_geometry_report(s, sm.metric);
  // At the diagonal radius a ball of two points is 2-separated (cap oracle).
  unsigned zero = sm.index.poset.zero_or_throw();
  CHECK(oracle::naive_cap(sm.index.elems[zero], elemset_of({0, 1})) == 2);
  CHECK(r.separation[zero] == 2);
  // At the top radius everything collapses to one.
  CHECK(r.separation[sm.index.index_of(top)] == 1);
  CHECK(r.cover[zero] == 2);
  CHECK(r.bridge_ok);
  CHECK(r.sandwich_checked);
  CHECK(r.sandwich_ok);
}

TEST_CASE("bounded geometry sweeps all structures on up to four points") {
  for (unsigned n = 2; n <= 4; ++n) {
    GroundSet g(n);
    for (const CoarseStructure& s : oracle::all_structures(g)) {
      BoundedGeometryReport r = bounded_geometry_report(s, saturated_metric(s).metric);
      CHECK(r.b1);
      CHECK(r.bridge_ok);
      CHECK(r.sandwich_ok);
    }
  }
}

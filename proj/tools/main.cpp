// Command-line front end: loads plain-text fixtures, runs the constructions
// and verifications, and emits deterministic reports. Comment lines start
// with '#', so every report is itself a loadable fixture.
//
// Exit codes: 0 verified/constructed, 1 property failure (witness in the
// report), 2 input error (diagnostics on stderr).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "relmet/coarse.hpp"
#include "relmet/hyperspace.hpp"
#include "relmet/io.hpp"
#include "relmet/metric.hpp"
#include "relmet/poset.hpp"
#include "relmet/props.hpp"
#include "relmet/relset.hpp"
#include "relmet/uniform.hpp"
#include "relmet/valuation.hpp"

namespace {

using namespace relmet;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Workspace load_files(const std::vector<std::string>& paths) {
  Workspace ws;
  for (const std::string& p : paths) {
    std::ifstream in(p);
    if (!in) throw InputError("cannot open '" + p + "'");
    try {
      parse_into(ws, in);
    } catch (const ParseError& e) {
      throw InputError(p + ": " + e.what());
    }
  }
  return ws;
}

template <typename Map>
const typename Map::mapped_type& get(const Map& m, const std::string& name,
                                     const std::string& kind) {
  auto it = m.find(name);
  if (it == m.end()) throw InputError("unknown " + kind + " '" + name + "'");
  return it->second;
}

std::string pair_text(const Relation& r) {
  std::ostringstream os;
  auto ps = r.pairs();
  os << "{";
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (k) os << ",";
    os << "(" << ps[k].first << "," << ps[k].second << ")";
  }
  os << "}";
  return os.str();
}

void print_table(const std::string& label, const std::vector<unsigned>& t) {
  std::cout << "# " << label << ":";
  for (unsigned a = 0; a < t.size(); ++a) std::cout << " " << a << "->" << t[a];
  std::cout << "\n";
}

void print_member_count(const CoarseStructure& s) {
  unsigned k = s.sym_member_count_log2();
  std::cout << "# symmetric reflexive members: 2^" << k;
  if (k < 63) std::cout << " = " << (std::uint64_t{1} << k);
  std::cout << "\n";
}

int run_check_coarse(const Workspace& ws, const std::string& family) {
  const auto& fam = get(ws.families, family, "family");
  const GroundSet& g = get(ws.grounds, fam.ground, "ground");
  auto violation = CoarseStructure::validate_sym_members(g, fam.members);
  if (violation) {
    std::cout << "# family " << family << ": not a coarse structure\n";
    std::cout << "# violation: " << *violation << "\n";
    return 1;
  }
  CoarseStructure s = CoarseStructure::from_sym_members(g, fam.members);
  std::cout << "# family " << family << ": valid coarse structure\n";
  print_member_count(s);
  write_ground(std::cout, fam.ground, g);
  write_relation(std::cout, family + ".top", fam.ground, s.top());
  return 0;
}

int run_saturate(const Workspace& ws, const std::string& name) {
  const auto& sec = get(ws.structures, name, "structure");
  const GroundSet& g = get(ws.grounds, sec.ground, "ground");
  CoarseStructure s = CoarseStructure::generate(g, sec.members);
  print_member_count(s);
  write_ground(std::cout, sec.ground, g);
  std::cout << "# maximal member below\n";
  write_relation(std::cout, name + ".top", sec.ground, s.top());
  SaturatedMetric sm = saturated_metric(s);
  std::cout << "# index elements, in serialization order\n";
  for (unsigned e = 0; e < sm.index.elems.size(); ++e)
    std::cout << "# elem " << e << " = " << pair_text(sm.index.elems[e]) << "\n";
  write_poset(std::cout, name + ".index", sm.index.poset);
  write_metric(std::cout, name + ".canonical", sec.ground, name + ".index", sm.metric);
  print_table("growth witness (member to its square)", sm.phi.table());
  bool saturated = is_saturated(sm.metric);
  auto cert = coarse_certificate(sm.metric);
  bool round = cert && structure_from_metric(*cert) == s;
  std::cout << "# saturated: " << (saturated ? "yes" : "no") << "\n";
  std::cout << "# regenerates the structure: " << (round ? "yes" : "no") << "\n";
  return saturated && round ? 0 : 1;
}

int run_from_base(const Workspace& ws, const std::string& family) {
  const auto& fam = get(ws.families, family, "family");
  std::optional<BaseMetric> bm;
  try {
    bm.emplace(metric_from_base(fam.members));
  } catch (const std::invalid_argument& e) {
    std::cout << "# family " << family << ": " << e.what() << "\n";
    return 1;
  }
  std::cout << "# family " << family << " is a base; index is its intersection closure\n";
  write_ground(std::cout, fam.ground, get(ws.grounds, fam.ground, "ground"));
  for (unsigned e = 0; e < bm->index.elems.size(); ++e)
    std::cout << "# elem " << e << " = " << pair_text(bm->index.elems[e]) << "\n";
  std::cout << "# totally ordered index: "
            << (is_totally_ordered(bm->index.poset) ? "yes" : "no") << "\n";
  write_poset(std::cout, family + ".index", bm->index.poset);
  write_metric(std::cout, family + ".metric", fam.ground, family + ".index", bm->metric);
  print_table("growth witness", bm->phi.table());
  auto cert = coarse_certificate(bm->metric);
  bool round = cert && structure_from_metric(*cert) == bm->structure;
  std::cout << "# regenerates the generated structure: " << (round ? "yes" : "no") << "\n";
  return round ? 0 : 1;
}

int run_dominate(const Workspace& ws, const std::string& left, const std::string& right) {
  const GenMetric& dl = get(ws.metrics, left, "metric");
  const GenMetric& dr = get(ws.metrics, right, "metric");
  auto lr = domination(dl, dr);
  auto rl = domination(dr, dl);
  std::cout << "# " << left << " dominated by " << right << ": " << (lr ? "yes" : "no")
            << "\n";
  if (lr) print_table("witness into " + left + " index", lr->table());
  std::cout << "# " << right << " dominated by " << left << ": " << (rl ? "yes" : "no")
            << "\n";
  if (rl) print_table("witness into " + right + " index", rl->table());
  std::cout << "# coarsely equivalent: " << (lr && rl ? "yes" : "no") << "\n";
  Relation tl = induced_structure(dl).top();
  Relation tr = induced_structure(dr).top();
  std::cout << "# structures: left-in-right " << (is_subset(tl, tr) ? "yes" : "no")
            << ", right-in-left " << (is_subset(tr, tl) ? "yes" : "no") << "\n";
  return 0;
}

int run_props(const Workspace& ws, const std::string& dx_name, const std::string& dy_name,
              const std::string& map_name, const std::string& map2_name,
              const std::string& set_spec) {
  const GenMetric& dx = get(ws.metrics, dx_name, "metric");
  const GenMetric& dy = get(ws.metrics, dy_name, "metric");
  CoarseStructure sx = induced_structure(dx);
  CoarseStructure sy = induced_structure(dy);
  std::cout << "# source coarsely connected: "
            << (is_coarsely_connected(sx, dx) ? "yes" : "no") << "\n";
  std::cout << "# target coarsely connected: "
            << (is_coarsely_connected(sy, dy) ? "yes" : "no") << "\n";
  if (!set_spec.empty()) {
    ElemSet b = 0;
    std::istringstream in(set_spec);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      unsigned long e = std::stoul(tok);
      if (e >= dx.ground().size())
        throw InputError("set element " + tok + " is outside the ground set");
      b |= ElemSet{1} << static_cast<unsigned>(e);
    }
    auto w = bounded_witness(sx, dx, b);
    if (w)
      std::cout << "# set {" << set_spec << "} bounded: yes, ball(" << w->center << ","
                << w->radius << ")\n";
    else
      std::cout << "# set {" << set_spec << "} bounded: no\n";
  }
  if (!map_name.empty()) {
    const SpaceMap& f = get(ws.maps, map_name, "map");
    auto text = [](Verdict3 v) {
      return v == Verdict3::yes ? "yes" : v == Verdict3::no ? "no" : "undetermined";
    };
    auto born = is_bornologous(f, dx, dy);
    std::cout << "# bornologous: " << text(born.verdict)
              << (born.used_fallback ? " (witness search)" : "") << "\n";
    auto prop = is_proper(f, dx, dy);
    std::cout << "# proper: " << (prop ? "yes" : "no") << "\n";
    auto eff = is_effectively_proper(f, dx, dy);
    std::cout << "# effectively proper: " << text(eff.verdict)
              << (eff.used_fallback ? " (witness search)" : "") << "\n";
    if (!map2_name.empty()) {
      const SpaceMap& g2 = get(ws.maps, map2_name, "map");
      auto beta = closeness_bound(f, g2, dy);
      if (beta)
        std::cout << "# close: yes, bound " << *beta << "\n";
      else
        std::cout << "# close: no\n";
    }
  }
  return 0;
}

int run_bounded_geometry(const Workspace& ws, const std::string& structure,
                         const std::string& metric) {
  std::optional<CoarseStructure> s;
  std::optional<GenMetric> d;
  if (!metric.empty()) {
    d = get(ws.metrics, metric, "metric");
    s = induced_structure(*d);
  } else {
    const auto& sec = get(ws.structures, structure, "structure");
    const GroundSet& g = get(ws.grounds, sec.ground, "ground");
    s = CoarseStructure::generate(g, sec.members);
    d = saturated_metric(*s).metric;
  }
  BoundedGeometryReport r = bounded_geometry_report(*s, *d);
  print_table("worst separation per radius", r.separation);
  print_table("worst disjoint relative balls per radius", r.disjoint);
  print_table("worst cover size per radius", r.cover);
  std::cout << "# separation witness: radius " << r.alpha1 << ", count " << r.n1 << "\n";
  std::cout << "# disjoint-ball witness: radius " << r.alpha2 << ", count " << r.n2 << "\n";
  std::cout << "# cover witness: radius " << r.alpha3 << ", count " << r.n3 << "\n";
  std::cout << "# verdicts: " << (r.b1 ? "yes " : "no ") << (r.b2 ? "yes " : "no ")
            << (r.b3 ? "yes " : "no ") << (r.b4 ? "yes" : "no") << "\n";
  std::cout << "# separation/disjoint bridge: " << (r.bridge_ok ? "ok" : "failed") << "\n";
  if (r.sandwich_checked)
    std::cout << "# capacity-cover sandwich: " << (r.sandwich_ok ? "ok" : "failed") << "\n";
  else
    std::cout << "# capacity-cover sandwich: skipped (ground set above the sweep size)\n";
  bool ok = r.b1 && r.b2 && r.b3 && r.b4 && r.bridge_ok &&
            (!r.sandwich_checked || r.sandwich_ok);
  return ok ? 0 : 1;
}

int run_hausdorff(const Workspace& ws, const std::string& structure,
                  const std::string& base_family, const std::string& metric) {
  std::optional<CoarseStructure> s;
  std::optional<GenMetric> d;
  std::string ground_name;
  if (!metric.empty()) {
    d = get(ws.metrics, metric, "metric");
    s = induced_structure(*d);
    ground_name = get(ws.metric_refs, metric, "metric").first;
  } else {
    const auto& sec = get(ws.structures, structure, "structure");
    const GroundSet& g = get(ws.grounds, sec.ground, "ground");
    s = CoarseStructure::generate(g, sec.members);
    ground_name = sec.ground;
    // Canonical chain metric: the largest member alone is a base.
    d = metric_from_base({s->top()}).metric;
  }
  Hyperspace h(s->ground());
  CoarseStructure lifted = hausdorff_structure(h, *s);
  std::cout << "# hyperspace of " << ground_name << ": " << h.derived().size()
            << " subsets\n";
  print_member_count(lifted);
  write_ground(std::cout, ground_name + ".subsets", h.derived());
  write_relation(std::cout, "hausdorff.top", ground_name + ".subsets", lifted.top());
  if (!base_family.empty()) {
    const auto& fam = get(ws.families, base_family, "family");
    CoarseStructure via_base = hausdorff_structure_from_base(h, fam.members);
    std::cout << "# base path agrees with member path: "
              << (via_base == lifted ? "yes" : "no") << "\n";
    if (!(via_base == lifted)) return 1;
  }
  if (!is_meet_complete(d->index())) {
    std::cout << "# subset distance: skipped (index not meet-complete)\n";
    return 0;
  }
  HausdorffMetric hm = hausdorff_metric(h, *d);
  std::cout << "# subset distance computed over the metric's index\n";
  if (hm.phi) {
    print_table("subset-distance growth witness", *hm.phi);
  } else {
    std::cout << "# growth certificate withheld (index not totally ordered)\n";
  }
  if (is_totally_ordered(d->index())) {
    auto cert = coarse_certificate(*d);
    if (cert) {
      AgreementVerdict v = hausdorff_agreement(h, *cert);
      std::cout << "# induced structure matches the lifted structure: "
                << (v.equal ? "yes" : "no") << "\n";
      if (!v.equal) {
        if (v.differing)
          std::cout << "# differing pair: subsets " << v.differing->first << " and "
                    << v.differing->second << "\n";
        return 1;
      }
    }
  } else {
    std::cout << "# agreement check skipped (index not totally ordered)\n";
  }
  return 0;
}

int run_uniformize(const Workspace& ws, const std::string& uniform,
                   const std::string& base_family) {
  const auto& sec = get(ws.uniforms, uniform, "uniform");
  const GroundSet& g = get(ws.grounds, sec.ground, "ground");
  std::optional<UniformBase> ub;
  try {
    ub.emplace(g, sec.members);
  } catch (const std::invalid_argument& e) {
    std::cout << "# uniform " << uniform << ": " << e.what() << "\n";
    return 1;
  }
  auto [zero, trivial] = zero_and_triviality(*ub);
  std::cout << "# filter intersection " << pair_text(zero) << "\n";
  std::cout << "# principal: " << (trivial ? "yes" : "no")
            << " (finite filters always are)\n";
  std::cout << "# hausdorff (intersection is the diagonal): "
            << (zero == diagonal(g) ? "yes" : "no") << "\n";
  write_ground(std::cout, sec.ground, g);
  write_relation(std::cout, uniform + ".zero", sec.ground, zero);

  GenMetric tm = trivial_metric(*ub);
  auto tc = descent_certificate(tm);
  bool tm_ok = tc && uniformity_from_metric(*tc).base.same_filter(*ub);
  std::cout << "# two-valued metric regenerates the filter: " << (tm_ok ? "yes" : "no")
            << "\n";

  std::vector<Relation> base =
      base_family.empty() ? intersection_closed_base(*ub)
                          : get(ws.families, base_family, "family").members;
  std::optional<UniformMetric> um;
  try {
    um.emplace(metric_from_uniform_base(*ub, base));
  } catch (const std::invalid_argument& e) {
    std::cout << "# base rejected: " << e.what() << "\n";
    return 1;
  }
  std::cout << "# index elements, in serialization order\n";
  for (unsigned e = 0; e < um->index.elems.size(); ++e)
    std::cout << "# elem " << e << " = " << pair_text(um->index.elems[e]) << "\n";
  write_poset(std::cout, uniform + ".index", um->index.poset);
  write_metric(std::cout, uniform + ".metric", sec.ground, uniform + ".index", um->metric);
  std::cout << "# sublevel at every index equals that index's relation: "
            << (um->sublevel_identity ? "yes" : "no") << "\n";
  if (um->psi) {
    print_table("descent witness", *um->psi);
  } else {
    std::cout
        << "# descent witness: none with nonzero values (principal-filter degeneracy)\n";
  }
  bool regen = filter_from_all_sublevels(um->metric).same_filter(*ub);
  std::cout << "# sublevel family regenerates the filter: " << (regen ? "yes" : "no")
            << "\n";
  return um->sublevel_identity && regen && tm_ok ? 0 : 1;
}

int run_padic(unsigned prime, const std::string& window_spec, bool rationals) {
  std::size_t dots = window_spec.find("..");
  if (dots == std::string::npos) throw InputError("window must look like a..b");
  long lo = std::stol(window_spec.substr(0, dots));
  long hi = std::stol(window_spec.substr(dots + 2));
  if (lo > hi) throw InputError("empty window");
  if (hi - lo >= 512) throw InputError("window too large for the pairwise axiom sweep");
  PadicRing ring(prime, rationals);
  std::vector<RingElem> window;
  for (long x = lo; x <= hi; ++x) window.emplace_back(x);
  ValuationAxiomReport ax = check_valuation_axioms(ring, window);
  std::cout << "# prime " << prime << ", window " << lo << ".." << hi << "\n";
  std::cout << "# axioms: product " << (ax.multiplicative ? "ok" : "failed") << ", sum "
            << (ax.subadditive ? "ok" : "failed") << ", unit "
            << (ax.unit_is_zero ? "ok" : "failed") << ", zero "
            << (ax.zero_is_top ? "ok" : "failed") << "\n";
  std::cout << "# strict sum instances: " << ax.strict_instances << "\n";
  bool ax_ok = ax.multiplicative && ax.subadditive && ax.unit_is_zero && ax.zero_is_top;
  if (window.size() > caps().window) {
    std::cout << "# metric: skipped (window exceeds the cap)\n";
    return ax_ok ? 0 : 1;
  }
  ValuationMetric vm = valuation_metric(ring, window);
  std::cout << "# scale (index -> valuation):";
  for (unsigned k = 0; k < vm.scale.size(); ++k) {
    std::cout << " " << k << "->";
    if (vm.scale[k].omega)
      std::cout << "w";
    else
      std::cout << vm.scale[k].v;
  }
  std::cout << "\n";
  unsigned n = vm.metric.ground().size();
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      Valuation v = vm.scale[vm.metric.at(i, j).index()];
      std::cout << "# d(" << (lo + static_cast<long>(i)) << ","
                << (lo + static_cast<long>(j)) << ") = ";
      if (v.omega)
        std::cout << "w";
      else
        std::cout << v.v;
      std::cout << "\n";
    }
  write_ground(std::cout, "window", vm.metric.ground());
  write_poset(std::cout, "scale", vm.metric.index());
  write_metric(std::cout, "dv", "window", "scale", vm.metric);
  std::vector<unsigned> identity(vm.metric.index().size());
  for (unsigned k = 0; k < identity.size(); ++k) identity[k] = k;
  bool growth = check_growth_map(vm.metric, identity);
  bool descent = check_descent_map(vm.metric, identity);
  std::cout << "# identity growth witness: " << (growth ? "ok" : "failed") << "\n";
  std::cout << "# identity descent witness: " << (descent ? "ok" : "failed") << "\n";
  bool bridged = true;
  auto cert = coarse_certificate(vm.metric);
  if (cert && vm.metric.index().size() > 1) {
    DescentBridge bridge = cofinal_descent(*cert);
    bridged = bridge.applicable && bridge.confirmed;
    std::cout << "# growth image downward cofinal, descent confirmed: "
              << (bridged ? "yes" : "no") << "\n";
  } else {
    std::cout << "# descent bridge: not applicable (no nonzero index)\n";
  }
  return ax_ok && growth && descent && bridged ? 0 : 1;
}

int run_search(unsigned ground, const std::vector<std::string>& pools,
               std::uint64_t budget) {
  std::vector<Poset> pool;
  for (const std::string& p : pools) {
    if (p == "diamond")
      pool.push_back(Poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    else if (p == "double-diamond")
      pool.push_back(
          Poset(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}}));
    else if (p == "chain3")
      pool.push_back(Poset::chain(3));
    else if (p == "cube")
      pool.push_back(Poset(8, {{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3}, {2, 6},
                               {4, 5}, {4, 6}, {3, 7}, {5, 7}, {6, 7}}));
    else
      throw InputError("unknown pool '" + p + "'");
  }
  SearchOutcome out = search_hausdorff_counterexample(ground, pool, budget);
  std::cout << "# completed: " << (out.completed ? "yes" : "no") << "\n";
  std::cout << "# index posets used: " << out.posets_used
            << ", skipped: " << out.posets_skipped << "\n";
  std::cout << "# metrics tested: " << out.metrics_tested
            << ", of which coarse: " << out.coarse_tested << "\n";
  auto dump = [](const char* what, const SearchWitness& w) {
    std::cout << "# " << what << " witness found\n";
    write_poset(std::cout, "witness.index", w.index);
    write_ground(std::cout, "witness.ground", w.metric.ground());
    write_metric(std::cout, "witness.metric", "witness.ground", "witness.index", w.metric);
  };
  if (out.growth_failure)
    dump("growth", *out.growth_failure);
  else
    std::cout << "# no growth-witness failure within bounds\n";
  if (out.structure_failure)
    dump("structure", *out.structure_failure);
  else
    std::cout << "# no structure mismatch within bounds\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "relmet: exact computations with coarse structures, uniform structures and "
      "poset-valued metrics on finite sets"};
  app.footer(
      "Capacity caps are read from RELMET_CAPS, e.g. "
      "RELMET_CAPS=ground=16,hyper=4,window=32,completion=6,enumeration=65536");
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string family, structure, metric, left, right, dx, dy, map1, map2, set_spec;
  std::string base_family, uniform, window = "0..7";
  unsigned prime = 2, ground = 3;
  bool rationals = false;
  std::uint64_t budget = 1000000;
  std::vector<std::string> pools{"diamond"};

  auto add_inputs = [&](CLI::App* cmd) {
    cmd->add_option("--in", inputs, "input fixture file(s)")->required()->expected(-1);
  };

  CLI::App* cc = app.add_subcommand("check-coarse",
                                    "verify that a family is exactly the symmetric "
                                    "reflexive member family of a coarse structure");
  add_inputs(cc);
  cc->add_option("--family", family, "family name")->required();

  CLI::App* sat = app.add_subcommand(
      "saturate", "generate a structure and emit its canonical saturated metric");
  add_inputs(sat);
  sat->add_option("--structure", structure, "structure name")->required();

  CLI::App* fb = app.add_subcommand(
      "from-base", "build the metric attached to a base of a coarse structure");
  add_inputs(fb);
  fb->add_option("--family", family, "base family name")->required();

  CLI::App* dom = app.add_subcommand("dominate", "compare two metrics for domination");
  add_inputs(dom);
  dom->add_option("--left", left, "metric name")->required();
  dom->add_option("--right", right, "metric name")->required();

  CLI::App* pr = app.add_subcommand("props", "coarse-map property checks");
  add_inputs(pr);
  pr->add_option("--dx", dx, "source metric")->required();
  pr->add_option("--dy", dy, "target metric")->required();
  pr->add_option("--map", map1, "map name");
  pr->add_option("--map2", map2, "second map name");
  pr->add_option("--set", set_spec, "comma-separated source elements");

  CLI::App* bg =
      app.add_subcommand("bounded-geometry", "bounded-geometry witnesses and inequalities");
  add_inputs(bg);
  bg->add_option("--structure", structure, "structure name");
  bg->add_option("--metric", metric, "metric name");

  CLI::App* hd =
      app.add_subcommand("hausdorff", "lift a structure and its metric to the hyperspace");
  add_inputs(hd);
  hd->add_option("--structure", structure, "structure name");
  hd->add_option("--base", base_family, "base family for the base-path comparison");
  hd->add_option("--metric", metric, "metric name");

  CLI::App* un =
      app.add_subcommand("uniformize", "uniform-structure constructions and round trips");
  add_inputs(un);
  un->add_option("--uniform", uniform, "uniform base name")->required();
  un->add_option("--base", base_family, "intersection-closed base family");

  CLI::App* pa = app.add_subcommand("padic", "valuation metric of a p-adic window");
  pa->add_option("--prime", prime, "prime")->required();
  pa->add_option("--window", window, "integer window a..b");
  pa->add_flag("--rationals", rationals, "work in the rational field");

  CLI::App* se = app.add_subcommand("search-counterexample",
                                    "search non-chain indices for subset-distance "
                                    "failures; outcomes are reported, not asserted");
  se->add_option("--ground", ground, "max ground size (2..3)");
  se->add_option("--pool", pools, "index pools: diamond double-diamond cube chain3");
  se->add_option("--budget", budget, "step budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cc->parsed()) return run_check_coarse(load_files(inputs), family);
    if (sat->parsed()) return run_saturate(load_files(inputs), structure);
    if (fb->parsed()) return run_from_base(load_files(inputs), family);
    if (dom->parsed()) return run_dominate(load_files(inputs), left, right);
    if (pr->parsed()) return run_props(load_files(inputs), dx, dy, map1, map2, set_spec);
    if (bg->parsed()) {
      if (structure.empty() && metric.empty())
        throw InputError("need --structure or --metric");
      return run_bounded_geometry(load_files(inputs), structure, metric);
    }
    if (hd->parsed()) {
      if (structure.empty() && metric.empty())
        throw InputError("need --structure or --metric");
      return run_hausdorff(load_files(inputs), structure, base_family, metric);
    }
    if (un->parsed()) return run_uniformize(load_files(inputs), uniform, base_family);
    if (pa->parsed()) return run_padic(prime, window, rationals);
    if (se->parsed()) return run_search(ground, pools, budget);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

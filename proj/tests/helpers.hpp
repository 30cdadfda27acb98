#pragma once

// Test-only oracles and generators. Everything here recomputes results by
// direct enumeration, independent of the library's bitset paths, so the two
// can check each other.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "relmet/coarse.hpp"
#include "relmet/metric.hpp"
#include "relmet/poset.hpp"
#include "relmet/relset.hpp"

namespace oracle {

using namespace relmet;

inline Relation naive_compose(const Relation& a, const Relation& b) {
  unsigned n = a.size();
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n; ++k)
      for (unsigned j = 0; j < n; ++j)
        if (a.test(i, j) && b.test(j, k)) {
          pairs.emplace_back(i, k);
          break;
        }
  Relation out(a.ground());
  for (auto [i, k] : pairs) out = rel_union(out, Relation(a.ground(), {{i, k}}));
  return out;
}

inline ElemSet naive_image(const Relation& b, ElemSet s) {
  ElemSet out = 0;
  for (unsigned y = 0; y < b.size(); ++y)
    for (unsigned x : elemset_elements(s))
      if (b.test(x, y)) out |= ElemSet{1} << y;
  return out;
}

/// Largest subset of s whose distinct elements are pairwise unrelated by e,
/// found by scanning every subset.
inline unsigned naive_cap(const Relation& e, ElemSet s) {
  auto elems = elemset_elements(s);
  unsigned best = 0;
  for (std::uint32_t mask = 0; mask < (1u << elems.size()); ++mask) {
    std::vector<unsigned> pick;
    for (std::size_t k = 0; k < elems.size(); ++k)
      if ((mask >> k) & 1u) pick.push_back(elems[k]);
    bool ok = true;
    for (unsigned a : pick)
      for (unsigned b : pick)
        if (a != b && e.test(a, b)) ok = false;
    if (ok) best = std::max<unsigned>(best, static_cast<unsigned>(pick.size()));
  }
  return best;
}

/// Smallest number of rows of e whose images cover s, by trying all center
/// tuples of growing size. Returns -1 for "no cover".
inline int naive_ent(const Relation& e, ElemSet s) {
  if (s == 0) return 0;
  unsigned n = e.size();
  ElemSet reachable = 0;
  for (unsigned x = 0; x < n; ++x) reachable |= e.row(x);
  if (s & ~reachable) return -1;
  for (unsigned k = 1; k <= n; ++k) {
    std::vector<unsigned> centers(k, 0);
    std::function<bool(unsigned, unsigned)> rec = [&](unsigned pos, unsigned from) -> bool {
      if (pos == k) {
        ElemSet cover = 0;
        for (unsigned c : centers) cover |= e.row(c);
        return (s & ~cover) == 0;
      }
      for (unsigned c = from; c < n; ++c) {
        centers[pos] = c;
        if (rec(pos + 1, c)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return static_cast<int>(k);
  }
  return -1;
}

/// All symmetric reflexive relations on n elements, by enumerating the
/// off-diagonal pair masks directly.
inline std::vector<Relation> all_sym_refl(const GroundSet& g) {
  std::vector<std::pair<unsigned, unsigned>> slots;
  for (unsigned i = 0; i < g.size(); ++i)
    for (unsigned j = i + 1; j < g.size(); ++j) slots.emplace_back(i, j);
  std::vector<Relation> out;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    Relation r = diagonal(g);
    for (std::size_t k = 0; k < slots.size(); ++k)
      if ((mask >> k) & 1u)
        r = rel_union(r, Relation(g, {{slots[k].first, slots[k].second},
                                      {slots[k].second, slots[k].first}}));
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Literal closure fixpoint on the whole family: symmetrize the generators,
/// then alternate pairwise-union and product passes until nothing new
/// appears. Cross-checks the top-driven implementation.
inline std::vector<Relation> naive_structure_members(const GroundSet& g,
                                                     const std::vector<Relation>& gens) {
  std::vector<Relation> fam{diagonal(g)};
  for (const Relation& r : gens) fam.push_back(symmetrize_cup(r));
  std::sort(fam.begin(), fam.end());
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  for (;;) {
    std::vector<Relation> fresh;
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = 0; b < fam.size(); ++b) {
        Relation u = rel_union(fam[a], fam[b]);
        Relation p = symmetrize_cup(compose(fam[a], fam[b]));
        for (const Relation& c : {u, p})
          if (!std::binary_search(fam.begin(), fam.end(), c)) fresh.push_back(c);
      }
    if (fresh.empty()) break;
    fam.insert(fam.end(), fresh.begin(), fresh.end());
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  }
  // Downward closure: all symmetric reflexive relations under some member.
  std::vector<Relation> members;
  for (const Relation& s : all_sym_refl(g))
    for (const Relation& f : fam)
      if (is_subset(s, f)) {
        members.push_back(s);
        break;
      }
  return members;
}

/// Every coarse structure on the ground set, deduplicated by largest member.
/// Closures of single symmetric reflexive generators already reach them all.
inline std::vector<CoarseStructure> all_structures(const GroundSet& g) {
  std::vector<CoarseStructure> out;
  std::vector<Relation> tops;
  for (const Relation& r : all_sym_refl(g)) {
    CoarseStructure s = CoarseStructure::generate(g, {r});
    if (std::find(tops.begin(), tops.end(), s.top()) == tops.end()) {
      tops.push_back(s.top());
      out.push_back(s);
    }
  }
  return out;
}

/// Meet-completeness by scanning every non-empty subset for a greatest lower
/// bound, with no pairwise shortcut.
inline bool naive_meet_complete(const Poset& p) {
  unsigned m = p.size();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<unsigned> s;
    for (unsigned k = 0; k < m; ++k)
      if ((mask >> k) & 1u) s.push_back(k);
    std::vector<unsigned> lbs;
    for (unsigned c = 0; c < m; ++c) {
      bool lb = true;
      for (unsigned e : s)
        if (!p.leq(c, e)) lb = false;
      if (lb) lbs.push_back(c);
    }
    bool has_greatest = false;
    for (unsigned g : lbs) {
      bool top = true;
      for (unsigned l : lbs)
        if (!p.leq(l, g)) top = false;
      if (top) has_greatest = true;
    }
    if (!has_greatest) return false;
  }
  return true;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  unsigned below(unsigned n) {
    return static_cast<unsigned>(std::uniform_int_distribution<unsigned>(0, n - 1)(eng));
  }

  Relation relation(const GroundSet& g) {
    std::vector<ElemSet> rows(g.size());
    for (auto& r : rows)
      r = std::uniform_int_distribution<ElemSet>(0, g.all())(eng);
    return Relation(g, std::move(rows));
  }

  /// Random equivalence relation via a random partition.
  Relation equivalence(const GroundSet& g) {
    std::vector<unsigned> cls(g.size());
    unsigned classes = 0;
    for (unsigned i = 0; i < g.size(); ++i) {
      unsigned pick = below(classes + 1);
      cls[i] = (pick == classes) ? classes++ : pick;
    }
    std::vector<ElemSet> rows(g.size(), 0);
    for (unsigned i = 0; i < g.size(); ++i)
      for (unsigned j = 0; j < g.size(); ++j)
        if (cls[i] == cls[j]) rows[i] |= ElemSet{1} << j;
    return Relation(g, std::move(rows));
  }

  /// Random symmetric reflexive subrelation of a symmetric reflexive top.
  Relation sym_refl_inside(const Relation& top) {
    Relation r = diagonal(top.ground());
    for (unsigned i = 0; i < top.size(); ++i)
      for (unsigned j = i + 1; j < top.size(); ++j)
        if (top.test(i, j) && below(2) == 0)
          r = rel_union(r, Relation(top.ground(), {{i, j}, {j, i}}));
    return r;
  }
};

}  // namespace oracle

#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relmet/poset.hpp"
#include "relmet/relset.hpp"

namespace relmet {

/// Generalized metric: a map from pairs of ground elements into a poset with
/// zero, extended by a top. By default the semi-metric axioms (zero on the
/// diagonal, symmetry) are enforced at construction; the raw flag admits
/// arbitrary tables, which some constructions legitimately need.
class GenMetric {
 public:
  GenMetric(GroundSet ground, Poset index, std::vector<Ext> values, bool raw = false)
      : ground_(std::move(ground)),
        index_(std::move(index)),
        values_(std::move(values)),
        raw_(raw) {
    unsigned n = ground_.size();
    if (values_.size() != static_cast<std::size_t>(n) * n)
      throw std::invalid_argument("value table size does not match ground");
    for (const Ext& v : values_)
      if (!v.is_inf() && v.index() >= index_.size())
        throw std::out_of_range("metric value outside the index poset");
    index_.zero_or_throw();
    if (!raw_) {
      for (unsigned x = 0; x < n; ++x)
        if (!(at(x, x) == Ext::fin(index_.zero_or_throw())))
          throw std::invalid_argument("semi-metric violates zero on the diagonal");
      for (unsigned x = 0; x < n; ++x)
        for (unsigned y = x + 1; y < n; ++y)
          if (!(at(x, y) == at(y, x)))
            throw std::invalid_argument("semi-metric violates symmetry");
    }
  }

  const GroundSet& ground() const { return ground_; }
  const Poset& index() const { return index_; }
  bool raw() const { return raw_; }

  Ext at(unsigned x, unsigned y) const {
    if (x >= ground_.size() || y >= ground_.size())
      throw std::out_of_range("metric argument out of range");
    return values_[static_cast<std::size_t>(x) * ground_.size() + y];
  }

  friend bool operator==(const GenMetric& a, const GenMetric& b) {
    return a.ground_ == b.ground_ && a.index_ == b.index_ && a.values_ == b.values_;
  }

 private:
  GroundSet ground_;
  Poset index_;
  std::vector<Ext> values_;
  bool raw_;
};

/// Sublevel relation at a given index: pairs whose value sits at or below it.
inline Relation entourage(const GenMetric& d, unsigned alpha) {
  if (alpha >= d.index().size()) throw std::out_of_range("index out of range");
  unsigned n = d.ground().size();
  std::vector<ElemSet> rows(n, 0);
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = 0; y < n; ++y)
      if (ext_leq(d.at(x, y), Ext::fin(alpha), d.index())) rows[x] |= ElemSet{1} << y;
  return Relation(d.ground(), std::move(rows));
}

inline ElemSet ball(const GenMetric& d, unsigned z, unsigned alpha) {
  if (z >= d.ground().size()) throw std::out_of_range("center out of range");
  return image(entourage(d, alpha), ElemSet{1} << z);
}

/// The indexed family of sublevels over the nonzero indices; duplicates are
/// retained with their indices.
inline std::vector<std::pair<unsigned, Relation>> base_family(const GenMetric& d) {
  unsigned z = d.index().zero_or_throw();
  if (d.index().size() < 2)
    throw std::invalid_argument("index poset has no nonzero element");
  std::vector<std::pair<unsigned, Relation>> out;
  for (unsigned a = 0; a < d.index().size(); ++a)
    if (a != z) out.emplace_back(a, entourage(d, a));
  return out;
}

inline bool is_semi_metric(const GenMetric& d) {
  unsigned n = d.ground().size();
  unsigned z = d.index().zero_or_throw();
  for (unsigned x = 0; x < n; ++x)
    if (!(d.at(x, x) == Ext::fin(z))) return false;
  for (unsigned x = 0; x < n; ++x)
    for (unsigned y = x + 1; y < n; ++y)
      if (!(d.at(x, y) == d.at(y, x))) return false;
  return true;
}

}  // namespace relmet

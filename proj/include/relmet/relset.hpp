#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relmet/caps.hpp"

namespace relmet {

/// A subset of {0,...,n-1} packed into a word. Ground sets never exceed 64
/// elements, so one word always suffices.
using ElemSet = std::uint64_t;

inline ElemSet elemset_of(std::initializer_list<unsigned> xs) {
  ElemSet s = 0;
  for (unsigned x : xs) s |= ElemSet{1} << x;
  return s;
}

inline bool elemset_contains(ElemSet s, unsigned x) { return (s >> x) & 1u; }

inline std::vector<unsigned> elemset_elements(ElemSet s) {
  std::vector<unsigned> out;
  while (s) {
    out.push_back(static_cast<unsigned>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

/// Finite carrier set, canonically {0,...,n-1}. Labels are I/O sugar only;
/// two ground sets are compatible carriers iff they have the same size.
class GroundSet {
 public:
  explicit GroundSet(unsigned n) : GroundSet(n, {}) {}

  GroundSet(unsigned n, std::vector<std::string> labels) : n_(n) {
    if (n < 1) throw std::invalid_argument("ground set must be non-empty");
    if (n > 64) throw CapacityError("ground set larger than 64 elements");
    if (!labels.empty()) {
      if (labels.size() != n)
        throw std::invalid_argument("label count does not match ground size");
      auto sorted = labels;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("ground labels must be pairwise distinct");
      labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
    }
  }

  unsigned size() const { return n_; }

  bool has_labels() const { return labels_ != nullptr; }

  std::string label(unsigned i) const {
    if (i >= n_) throw std::out_of_range("element out of range");
    return labels_ ? (*labels_)[i] : std::to_string(i);
  }

  const std::vector<std::string>& labels() const {
    static const std::vector<std::string> none;
    return labels_ ? *labels_ : none;
  }

  bool compatible(const GroundSet& o) const { return n_ == o.n_; }

  friend bool operator==(const GroundSet& a, const GroundSet& b) {
    if (a.n_ != b.n_) return false;
    if (a.has_labels() != b.has_labels()) return false;
    return !a.has_labels() || *a.labels_ == *b.labels_;
  }

  ElemSet all() const { return n_ == 64 ? ~ElemSet{0} : (ElemSet{1} << n_) - 1; }

 private:
  unsigned n_;
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// Binary relation on a ground set, stored as one bit row per element.
/// Immutable after construction; all operations are pure.
class Relation {
 public:
  explicit Relation(GroundSet g) : ground_(std::move(g)), rows_(ground_.size(), 0) {}

  Relation(GroundSet g, std::vector<ElemSet> rows)
      : ground_(std::move(g)), rows_(std::move(rows)) {
    if (rows_.size() != ground_.size())
      throw std::invalid_argument("row count does not match ground size");
    for (ElemSet r : rows_)
      if (r & ~ground_.all()) throw std::out_of_range("relation pair out of range");
  }

  Relation(GroundSet g, std::initializer_list<std::pair<unsigned, unsigned>> pairs)
      : Relation(std::move(g)) {
    std::vector<ElemSet> rows = rows_;
    for (auto [i, j] : pairs) {
      if (i >= ground_.size() || j >= ground_.size())
        throw std::out_of_range("relation pair out of range");
      rows[i] |= ElemSet{1} << j;
    }
    rows_ = std::move(rows);
  }

  const GroundSet& ground() const { return ground_; }
  unsigned size() const { return ground_.size(); }

  bool test(unsigned i, unsigned j) const {
    if (i >= size() || j >= size()) throw std::out_of_range("pair out of range");
    return (rows_[i] >> j) & 1u;
  }

  ElemSet row(unsigned i) const { return rows_[i]; }
  const std::vector<ElemSet>& rows() const { return rows_; }

  unsigned pair_count() const {
    unsigned c = 0;
    for (ElemSet r : rows_) c += static_cast<unsigned>(std::popcount(r));
    return c;
  }

  bool empty() const {
    for (ElemSet r : rows_)
      if (r) return false;
    return true;
  }

  /// Pairs in row-major order, for serialization and reports.
  std::vector<std::pair<unsigned, unsigned>> pairs() const {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned i = 0; i < size(); ++i)
      for (unsigned j : elemset_elements(rows_[i])) out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.ground_.compatible(b.ground_) && a.rows_ == b.rows_;
  }

  /// Canonical total order (row-major lexicographic) used to make every
  /// enumeration in the library deterministic.
  friend bool operator<(const Relation& a, const Relation& b) {
    return a.rows_ < b.rows_;
  }

 private:
  GroundSet ground_;
  std::vector<ElemSet> rows_;
};

inline void require_same_ground(const Relation& a, const Relation& b) {
  if (!a.ground().compatible(b.ground()))
    throw CarrierMismatch("relations live on different ground sets");
}

inline Relation diagonal(const GroundSet& g) {
  std::vector<ElemSet> rows(g.size());
  for (unsigned i = 0; i < g.size(); ++i) rows[i] = ElemSet{1} << i;
  return Relation(g, std::move(rows));
}

inline Relation full_relation(const GroundSet& g) {
  return Relation(g, std::vector<ElemSet>(g.size(), g.all()));
}

inline Relation inverse(const Relation& a) {
  std::vector<ElemSet> rows(a.size(), 0);
  for (unsigned i = 0; i < a.size(); ++i)
    for (unsigned j : elemset_elements(a.row(i))) rows[j] |= ElemSet{1} << i;
  return Relation(a.ground(), std::move(rows));
}

/// (i,k) in compose(a,b) iff some j has (i,j) in a and (j,k) in b.
inline Relation compose(const Relation& a, const Relation& b) {
  require_same_ground(a, b);
  std::vector<ElemSet> rows(a.size(), 0);
  for (unsigned i = 0; i < a.size(); ++i)
    for (unsigned j : elemset_elements(a.row(i))) rows[i] |= b.row(j);
  return Relation(a.ground(), std::move(rows));
}

/// image(b, s) = { y : (x,y) in b for some x in s }; the witness sits on the
/// left coordinate.
inline ElemSet image(const Relation& b, ElemSet s) {
  if (s & ~b.ground().all()) throw std::out_of_range("image: element out of range");
  ElemSet out = 0;
  for (unsigned x : elemset_elements(s)) out |= b.row(x);
  return out;
}

inline Relation rel_union(const Relation& a, const Relation& b) {
  require_same_ground(a, b);
  std::vector<ElemSet> rows(a.size());
  for (unsigned i = 0; i < a.size(); ++i) rows[i] = a.row(i) | b.row(i);
  return Relation(a.ground(), std::move(rows));
}

inline Relation rel_intersect(const Relation& a, const Relation& b) {
  require_same_ground(a, b);
  std::vector<ElemSet> rows(a.size());
  for (unsigned i = 0; i < a.size(); ++i) rows[i] = a.row(i) & b.row(i);
  return Relation(a.ground(), std::move(rows));
}

inline Relation rel_minus(const Relation& a, const Relation& b) {
  require_same_ground(a, b);
  std::vector<ElemSet> rows(a.size());
  for (unsigned i = 0; i < a.size(); ++i) rows[i] = a.row(i) & ~b.row(i);
  return Relation(a.ground(), std::move(rows));
}

inline bool is_subset(const Relation& a, const Relation& b) {
  require_same_ground(a, b);
  for (unsigned i = 0; i < a.size(); ++i)
    if (a.row(i) & ~b.row(i)) return false;
  return true;
}

inline bool is_symmetric(const Relation& a) { return a == inverse(a); }

inline bool is_reflexive(const Relation& a) {
  for (unsigned i = 0; i < a.size(); ++i)
    if (!((a.row(i) >> i) & 1u)) return false;
  return true;
}

inline bool is_transitive(const Relation& a) { return is_subset(compose(a, a), a); }

/// (a n a^-1) u diag: the largest symmetric reflexive relation inside a u diag.
inline Relation symmetrize_cap(const Relation& a) {
  return rel_union(rel_intersect(a, inverse(a)), diagonal(a.ground()));
}

/// a u a^-1 u diag: the smallest symmetric reflexive relation containing a.
inline Relation symmetrize_cup(const Relation& a) {
  return rel_union(rel_union(a, inverse(a)), diagonal(a.ground()));
}

}  // namespace relmet

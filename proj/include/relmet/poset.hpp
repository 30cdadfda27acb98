#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relmet/relset.hpp"

namespace relmet {

/// Dynamic bitset sized at construction. Poset rows can outgrow one word
/// (inclusion posets over structure members reach 2^10 elements).
class BitVec {
 public:
  BitVec() : n_(0) {}
  explicit BitVec(unsigned n) : n_(n), w_((n + 63) / 64, 0) {}

  unsigned size() const { return n_; }
  bool test(unsigned i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
  void set(unsigned i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(unsigned i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  BitVec& operator&=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  BitVec& operator|=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }

  bool subset_of(const BitVec& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }

  unsigned count() const {
    unsigned c = 0;
    for (auto w : w_) c += static_cast<unsigned>(std::popcount(w));
    return c;
  }

  std::vector<unsigned> elements() const {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) { return a.w_ == b.w_; }

 private:
  unsigned n_;
  std::vector<std::uint64_t> w_;
};

/// Finite partially ordered set on indices 0..m-1. The order matrix is
/// validated (reflexive, antisymmetric, transitive) at construction; the
/// zero, when one exists, is located automatically.
class Poset {
 public:
  /// Build from a list of i <= j assertions. Reflexivity is implied and the
  /// transitive closure is taken, so covering relations suffice.
  Poset(unsigned m, const std::vector<std::pair<unsigned, unsigned>>& leq_pairs)
      : m_(m), up_(m, BitVec(m)), down_(m, BitVec(m)) {
    if (m < 1) throw std::invalid_argument("poset must be non-empty");
    for (unsigned i = 0; i < m_; ++i) up_[i].set(i);
    for (auto [i, j] : leq_pairs) {
      if (i >= m_ || j >= m_) throw std::out_of_range("poset pair out of range");
      up_[i].set(j);
    }
    // Warshall closure on the "above" rows.
    for (unsigned k = 0; k < m_; ++k)
      for (unsigned i = 0; i < m_; ++i)
        if (up_[i].test(k)) up_[i] |= up_[k];
    finish();
  }

  static Poset chain(unsigned m) {
    std::vector<std::pair<unsigned, unsigned>> pairs;
    for (unsigned i = 0; i + 1 < m; ++i) pairs.emplace_back(i, i + 1);
    return Poset(m, pairs);
  }

  static Poset antichain(unsigned m) { return Poset(m, {}); }

  unsigned size() const { return m_; }
  bool leq(unsigned a, unsigned b) const {
    if (a >= m_ || b >= m_) throw std::out_of_range("poset index out of range");
    return up_[a].test(b);
  }

  /// { b : a <= b } and { b : b <= a } as bit rows.
  const BitVec& above(unsigned a) const { return up_[a]; }
  const BitVec& below(unsigned a) const { return down_[a]; }

  std::optional<unsigned> zero() const { return zero_; }

  unsigned zero_or_throw() const {
    if (!zero_) throw std::invalid_argument("poset has no smallest element");
    return *zero_;
  }

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.m_ == b.m_ && a.up_ == b.up_;
  }

 private:
  void finish() {
    for (unsigned i = 0; i < m_; ++i)
      for (unsigned j = 0; j < m_; ++j)
        if (i != j && up_[i].test(j) && up_[j].test(i))
          throw std::invalid_argument("order matrix is not antisymmetric");
    for (unsigned i = 0; i < m_; ++i)
      for (unsigned j = 0; j < m_; ++j)
        if (up_[i].test(j)) down_[j].set(i);
    for (unsigned z = 0; z < m_; ++z)
      if (up_[z].count() == m_) {
        zero_ = z;
        break;
      }
  }

  unsigned m_;
  std::vector<BitVec> up_;
  std::vector<BitVec> down_;
  std::optional<unsigned> zero_;
};

/// Element of the order extended by a top adjoined above everything.
class Ext {
 public:
  Ext() : v_(-1) {}  // defaults to the adjoined top
  static Ext fin(unsigned idx) { return Ext(static_cast<int>(idx)); }
  static Ext infinity() { return Ext(-1); }

  bool is_inf() const { return v_ < 0; }
  unsigned index() const {
    if (is_inf()) throw std::logic_error("infinity has no index");
    return static_cast<unsigned>(v_);
  }

  friend bool operator==(Ext a, Ext b) { return a.v_ == b.v_; }

 private:
  explicit Ext(int v) : v_(v) {}
  int v_;
};

/// Extended order: fin(a) <= fin(b) per the poset, everything <= infinity,
/// infinity <= only itself.
inline bool ext_leq(Ext a, Ext b, const Poset& p) {
  if (b.is_inf()) return true;
  if (a.is_inf()) return false;
  return p.leq(a.index(), b.index());
}

/// Map between posets carrying a declared monotonicity flag. When declared
/// increasing the property is validated eagerly.
class MonotoneMap {
 public:
  MonotoneMap(Poset source, Poset target, std::vector<unsigned> table, bool increasing)
      : src_(std::move(source)),
        tgt_(std::move(target)),
        table_(std::move(table)),
        increasing_(increasing) {
    if (table_.size() != src_.size())
      throw std::invalid_argument("map table size does not match source");
    for (unsigned v : table_)
      if (v >= tgt_.size()) throw std::out_of_range("map value out of range");
    if (increasing_)
      for (unsigned a = 0; a < src_.size(); ++a)
        for (unsigned b = 0; b < src_.size(); ++b)
          if (src_.leq(a, b) && !tgt_.leq(table_[a], table_[b]))
            throw std::invalid_argument("map declared increasing is not");
  }

  const Poset& source() const { return src_; }
  const Poset& target() const { return tgt_; }
  unsigned operator()(unsigned a) const { return table_.at(a); }
  const std::vector<unsigned>& table() const { return table_; }
  bool increasing() const { return increasing_; }

  /// Extension sending the adjoined top to the adjoined top.
  Ext apply_ext(Ext a) const {
    return a.is_inf() ? Ext::infinity() : Ext::fin(table_.at(a.index()));
  }

 private:
  Poset src_;
  Poset tgt_;
  std::vector<unsigned> table_;
  bool increasing_;
};

inline bool is_upward_directed(const Poset& p) {
  for (unsigned a = 0; a < p.size(); ++a)
    for (unsigned b = a + 1; b < p.size(); ++b) {
      BitVec ub = p.above(a);
      ub &= p.above(b);
      if (!ub.any()) return false;
    }
  return true;
}

/// A poset with zero whose nonzero part is non-empty and downward directed.
inline bool is_d_index(const Poset& p) {
  unsigned z = p.zero_or_throw();
  if (p.size() < 2) return false;
  for (unsigned a = 0; a < p.size(); ++a) {
    if (a == z) continue;
    for (unsigned b = a + 1; b < p.size(); ++b) {
      if (b == z) continue;
      BitVec lb = p.below(a);
      lb &= p.below(b);
      lb.reset(z);
      if (!lb.any()) return false;
    }
  }
  return true;
}

/// Greatest lower bound of a non-empty set of indices, when it exists.
inline std::optional<unsigned> meet(const Poset& p, const std::vector<unsigned>& s) {
  if (s.empty()) throw std::invalid_argument("meet of empty set");
  BitVec lb = p.below(s[0]);
  for (std::size_t k = 1; k < s.size(); ++k) lb &= p.below(s[k]);
  for (unsigned g : lb.elements())
    if (lb.subset_of(p.below(g))) return g;
  return std::nullopt;
}

inline std::optional<unsigned> join(const Poset& p, const std::vector<unsigned>& s) {
  if (s.empty()) throw std::invalid_argument("join of empty set");
  BitVec ub = p.above(s[0]);
  for (std::size_t k = 1; k < s.size(); ++k) ub &= p.above(s[k]);
  for (unsigned g : ub.elements())
    if (ub.subset_of(p.above(g))) return g;
  return std::nullopt;
}

/// Finite posets are meet-complete iff all pairwise meets exist: meets of
/// larger subsets follow by folding.
inline bool is_meet_complete(const Poset& p) {
  for (unsigned a = 0; a < p.size(); ++a)
    for (unsigned b = a + 1; b < p.size(); ++b)
      if (!meet(p, {a, b})) return false;
  return true;
}

inline bool is_totally_ordered(const Poset& p) {
  for (unsigned a = 0; a < p.size(); ++a)
    for (unsigned b = a + 1; b < p.size(); ++b)
      if (!p.leq(a, b) && !p.leq(b, a)) return false;
  return true;
}

/// Complete-lattice test. With `extended` the question is asked of the poset
/// with a top adjoined: there, a bounded set needs a least upper bound inside
/// the poset while unbounded sets get the top for free.
inline bool is_complete_lattice(const Poset& p, bool extended) {
  if (!is_meet_complete(p)) return false;
  for (unsigned a = 0; a < p.size(); ++a)
    for (unsigned b = a + 1; b < p.size(); ++b) {
      BitVec ub = p.above(a);
      ub &= p.above(b);
      if (!ub.any() && extended) continue;
      if (!join(p, {a, b})) return false;
    }
  return true;
}

/// A family of relations arranged as a poset under inclusion, keeping the
/// relation attached to each index.
struct RelPoset {
  Poset poset;
  std::vector<Relation> elems;  // canonical (sorted) order, deduplicated

  unsigned index_of(const Relation& r) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), r);
    if (it == elems.end() || !(*it == r))
      throw std::invalid_argument("relation is not an element of the poset");
    return static_cast<unsigned>(it - elems.begin());
  }
};

inline RelPoset inclusion_poset(std::vector<Relation> family) {
  if (family.empty()) throw std::invalid_argument("inclusion poset of empty family");
  for (std::size_t k = 1; k < family.size(); ++k)
    require_same_ground(family[0], family[k]);
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  unsigned m = static_cast<unsigned>(family.size());
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned a = 0; a < m; ++a)
    for (unsigned b = 0; b < m; ++b)
      if (a != b && is_subset(family[a], family[b])) pairs.emplace_back(a, b);
  return RelPoset{Poset(m, pairs), std::move(family)};
}

}  // namespace relmet

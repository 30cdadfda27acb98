#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "relmet/coarse.hpp"
#include "relmet/metric.hpp"
#include "relmet/uniform.hpp"

namespace relmet {

using RingElem = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Element of the value group with an absorbing top adjoined: the valuation
/// of zero. In the group's own order the top is greater than everything;
/// the metric construction reverses that order, making it the zero there.
struct Valuation {
  bool omega;
  std::int64_t v;

  static Valuation top() { return {true, 0}; }
  static Valuation of(std::int64_t x) { return {false, x}; }

  friend Valuation operator+(Valuation a, Valuation b) {
    if (a.omega || b.omega) return top();
    return of(a.v + b.v);
  }

  /// Group order, top greatest.
  friend bool vleq(Valuation a, Valuation b) {
    if (b.omega) return true;
    if (a.omega) return false;
    return a.v <= b.v;
  }

  friend Valuation vmin(Valuation a, Valuation b) { return vleq(a, b) ? a : b; }

  friend bool operator==(Valuation a, Valuation b) {
    return a.omega == b.omega && (a.omega || a.v == b.v);
  }
};

/// Exact p-adic valuation on the integers or the rationals.
class PadicRing {
 public:
  explicit PadicRing(unsigned prime, bool rationals = false)
      : prime_(prime), rationals_(rationals) {
    if (prime > 1000000u) throw CapacityError("prime too large");
    if (prime < 2) throw std::invalid_argument("not a prime");
    for (unsigned d = 2; d * d <= prime; ++d)
      if (prime % d == 0) throw std::invalid_argument("not a prime");
  }

  unsigned prime() const { return prime_; }
  bool rationals() const { return rationals_; }

  bool accepts(const RingElem& x) const {
    return rationals_ || boost::multiprecision::denominator(x) == 1;
  }

  /// Exponent of the prime, numerator minus denominator; the adjoined top
  /// at zero.
  Valuation valuate(const RingElem& x) const {
    if (!accepts(x)) throw std::invalid_argument("element outside the ring");
    if (x == 0) return Valuation::top();
    return Valuation::of(factor_count(boost::multiprecision::numerator(x)) -
                         factor_count(boost::multiprecision::denominator(x)));
  }

 private:
  std::int64_t factor_count(BigInt n) const {
    if (n < 0) n = -n;
    std::int64_t c = 0;
    while (n % prime_ == 0) {
      n /= prime_;
      ++c;
    }
    return c;
  }

  unsigned prime_;
  bool rationals_;
};

/// Axiom verdicts over a finite sample, exact arithmetic throughout. The
/// subadditivity bound is reported with its strict instances, which occur
/// exactly where cancellation raises the valuation.
struct ValuationAxiomReport {
  bool multiplicative = true;   // value of a product adds
  bool subadditive = true;      // value of a sum at least the minimum
  bool unit_is_zero = true;     // value of one
  bool zero_is_top = true;      // value of zero
  unsigned strict_instances = 0;
  std::optional<std::pair<RingElem, RingElem>> failure;
};

inline ValuationAxiomReport check_valuation_axioms(const PadicRing& ring,
                                                   const std::vector<RingElem>& sample) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  ValuationAxiomReport r;
  r.unit_is_zero = ring.valuate(1) == Valuation::of(0);
  r.zero_is_top = ring.valuate(0) == Valuation::top();
  for (const RingElem& x : sample)
    for (const RingElem& y : sample) {
      Valuation vx = ring.valuate(x), vy = ring.valuate(y);
      if (!(ring.valuate(x * y) == vx + vy)) {
        r.multiplicative = false;
        if (!r.failure) r.failure = {x, y};
      }
      Valuation vs = ring.valuate(x + y);
      Valuation lo = vmin(vx, vy);
      if (!vleq(lo, vs)) {
        r.subadditive = false;
        if (!r.failure) r.failure = {x, y};
      } else if (!(vs == lo)) {
        ++r.strict_instances;
      }
    }
  return r;
}

/// Metric of valuation differences over a finite window, indexed by the
/// chain of attained values under the reversed group order: the top of the
/// group is the zero index and larger valuations sit lower.
struct ValuationMetric {
  GenMetric metric;
  std::vector<Valuation> scale;  // index -> group value; scale[0] is the top
  std::vector<RingElem> window;
};

inline ValuationMetric valuation_metric(const PadicRing& ring,
                                        const std::vector<RingElem>& window) {
  if (window.empty()) throw std::invalid_argument("empty window");
  if (window.size() > caps().window) throw CapacityError("window too large");
  for (const RingElem& x : window)
    if (!ring.accepts(x)) throw std::invalid_argument("window element outside the ring");
  unsigned n = static_cast<unsigned>(window.size());
  std::vector<std::int64_t> attained;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      Valuation v = ring.valuate(window[i] - window[j]);
      if (!v.omega) attained.push_back(v.v);
    }
  std::sort(attained.begin(), attained.end(), std::greater<>());
  attained.erase(std::unique(attained.begin(), attained.end()), attained.end());
  std::vector<Valuation> scale{Valuation::top()};
  for (std::int64_t v : attained) scale.push_back(Valuation::of(v));
  auto index_of = [&](Valuation v) {
    for (unsigned k = 0; k < scale.size(); ++k)
      if (scale[k] == v) return k;
    throw std::logic_error("value not on the scale");
  };
  std::vector<Ext> vals(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      vals[static_cast<std::size_t>(i) * n + j] =
          Ext::fin(index_of(ring.valuate(window[i] - window[j])));
  GroundSet g(n);
  GenMetric d(g, Poset::chain(static_cast<unsigned>(scale.size())), std::move(vals));
  return ValuationMetric{std::move(d), std::move(scale), window};
}

/// A coarse metric whose growth-witness image reaches arbitrarily far down
/// the nonzero indices is also a pseudo uniform metric: descending to any
/// nonzero index can be done by composing at a preimage.
struct DescentBridge {
  bool applicable;  // witness image is downward cofinal in the nonzero part
  std::optional<DescentCert> cert;
  bool confirmed = false;  // independent descent search also succeeds
};

inline DescentBridge cofinal_descent(const CoarseMetricCert& cert) {
  const Poset& idx = cert.metric.index();
  if (!is_upward_directed(idx))
    throw std::invalid_argument("index poset is not upward directed");
  if (!is_d_index(idx))
    throw std::invalid_argument("index poset is not a D-index set");
  unsigned zero = idx.zero_or_throw();
  // Image of the nonzero part under the growth witness.
  std::vector<unsigned> image;
  for (unsigned a = 0; a < idx.size(); ++a)
    if (a != zero) image.push_back(cert.phi[a]);
  for (unsigned v : image)
    if (v == zero) return {false, std::nullopt, false};
  for (unsigned a = 0; a < idx.size(); ++a) {
    if (a == zero) continue;
    bool reached = false;
    for (unsigned v : image)
      if (idx.leq(v, a)) reached = true;
    if (!reached) return {false, std::nullopt, false};
  }
  std::vector<unsigned> psi(idx.size(), zero);
  for (unsigned b = 0; b < idx.size(); ++b) {
    if (b == zero) continue;
    for (unsigned a = 0; a < idx.size(); ++a) {
      if (a == zero) continue;
      if (idx.leq(cert.phi[a], b)) {
        psi[b] = a;
        break;
      }
    }
  }
  DescentCert dc{cert.metric, std::move(psi)};
  bool valid = check_descent_map(dc.metric, dc.psi);
  bool independent = descent_certificate(cert.metric).has_value();
  return {true, valid ? std::optional<DescentCert>(std::move(dc)) : std::nullopt,
          valid && independent};
}

}  // namespace relmet

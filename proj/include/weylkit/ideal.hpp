#pragma once

// Ideals with cached reduced Groebner bases, intersection by t-elimination,
// Hilbert series of homogeneous quotients, and staircase enumeration.

#include <optional>
#include <vector>

#include "weylkit/groebner.hpp"
#include "weylkit/unipoly.hpp"

namespace weylkit::exact {

template <class K>
class Ideal {
public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Poly<K>> gens)
      : ring_(std::move(ring)), gens_(std::move(gens)) {
    for (auto& g : gens_)
      WK_ASSERT(g.is_zero() || g.ring() == ring_, "generator ring mismatch");
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly<K>>& gens() const { return gens_; }

  const std::vector<Poly<K>>& basis() const {
    if (!gb_) gb_ = groebner_basis(ring_, gens_);
    return *gb_;
  }

  Poly<K> reduce(const Poly<K>& f) const { return normal_form(f, basis()); }
  bool contains(const Poly<K>& f) const { return reduce(f).is_zero(); }

  bool is_homogeneous() const {
    for (const auto& g : gens_)
      if (!g.is_homogeneous()) return false;
    return true;
  }

private:
  RingPtr ring_;
  std::vector<Poly<K>> gens_;
  mutable std::optional<std::vector<Poly<K>>> gb_;
};

template <class K>
Ideal<K> ideal_sum(const Ideal<K>& I, const Ideal<K>& J) {
  std::vector<Poly<K>> gens = I.gens();
  gens.insert(gens.end(), J.gens().begin(), J.gens().end());
  return Ideal<K>(I.ring(), std::move(gens));
}

// I cap J via the elimination ideal of t*I + (1-t)*J in K[t, vars].
template <class K>
Ideal<K> ideal_intersect(const Ideal<K>& I, const Ideal<K>& J) {
  const RingPtr& ring = I.ring();
  WK_ASSERT(ring == J.ring(), "intersection across different rings");
  std::vector<std::string> ext_names;
  ext_names.push_back("@t");
  for (const auto& nm : ring->names) ext_names.push_back(nm);
  RingPtr ext = make_ring(ext_names, OrderKind::elim, 1);
  std::vector<int> up(static_cast<std::size_t>(ring->n));
  for (int i = 0; i < ring->n; ++i) up[static_cast<std::size_t>(i)] = i + 1;
  Poly<K> t = Poly<K>::variable(ext, 0);
  Poly<K> one_minus_t = Poly<K>::constant(ext, FieldOps<K>::one()) - t;
  std::vector<Poly<K>> gens;
  for (const auto& f : I.gens())
    if (!f.is_zero()) gens.push_back(t * f.transport(ext, up));
  for (const auto& g : J.gens())
    if (!g.is_zero()) gens.push_back(one_minus_t * g.transport(ext, up));
  auto gb = groebner_basis(ext, std::move(gens));
  std::vector<int> down(static_cast<std::size_t>(ext->n), -1);
  for (int i = 0; i < ring->n; ++i) down[static_cast<std::size_t>(i) + 1] = i;
  std::vector<Poly<K>> result;
  for (const auto& g : gb) {
    if (g.lm().e[0] != 0) continue;
    for (const auto& term : g.terms())
      WK_ASSERT(term.m.e[0] == 0, "eliminated variable leaks past the block");
    result.push_back(g.transport(ring, down));
  }
  return Ideal<K>(ring, std::move(result));
}

// numerator of the Hilbert series of a monomial ideal quotient, via
// N(I + (m)) = N(I) - t^deg(m) * N(I : m)
inline UPoly<Q> monomial_hilbert_numerator(std::vector<Mono> mons) {
  // minimalize
  std::vector<Mono> min;
  for (std::size_t i = 0; i < mons.size(); ++i) {
    bool red = false;
    for (std::size_t j = 0; j < mons.size() && !red; ++j)
      if (j != i && mono_divides(mons[j], mons[i]) &&
          !(mons[j] == mons[i] && j > i))
        red = true;
    if (!red) min.push_back(mons[i]);
  }
  for (const auto& m : min)
    if (m.is_one()) return UPoly<Q>();
  if (min.empty()) return UPoly<Q>::constant(Q(1));
  Mono pivot = min.back();
  min.pop_back();
  UPoly<Q> without = monomial_hilbert_numerator(min);
  std::vector<Mono> colon;
  colon.reserve(min.size());
  for (const auto& m : min) {
    Mono q = m;
    q.deg = 0;
    for (std::size_t i = 0; i < q.e.size(); ++i) {
      q.e[i] = std::max(0, m.e[i] - pivot.e[i]);
      q.deg += q.e[i];
    }
    colon.push_back(std::move(q));
  }
  UPoly<Q> with_colon = monomial_hilbert_numerator(colon);
  return without - UPoly<Q>::monomial(Q(1), pivot.deg) * with_colon;
}

// Hilbert series num/(1-t)^den_exp of a graded quotient.
struct HilbertSeries {
  UPoly<Q> num;
  int den_exp = 0;

  void reduce() {
    UPoly<Q> omt = UPoly<Q>::one_minus_power(1);
    while (den_exp > 0 && !num.is_zero() && num.mod(omt).is_zero()) {
      num = num.divexact(omt);
      --den_exp;
    }
  }
  bool finite() const {
    HilbertSeries h = *this;
    h.reduce();
    return h.den_exp == 0 || h.num.is_zero();
  }
  // vector-space dimension when finite
  Z dim() const {
    HilbertSeries h = *this;
    h.reduce();
    WK_ASSERT(h.den_exp == 0 || h.num.is_zero(), "dimension of an infinite quotient");
    Q v = h.num.eval(Q(1));
    WK_ASSERT(v.get_den() == 1, "non-integral dimension");
    return v.get_num();
  }
  std::vector<Q> coefficients(int bound) const {
    RatFun<Q> f{num, UPoly<Q>::constant(Q(1))};
    for (int i = 0; i < den_exp; ++i) f.den = f.den * UPoly<Q>::one_minus_power(1);
    return f.series(bound);
  }
  friend bool operator==(const HilbertSeries& a, const HilbertSeries& b) {
    HilbertSeries x = a, y = b;
    x.reduce();
    y.reduce();
    return x.num == y.num && (x.den_exp == y.den_exp || x.num.is_zero());
  }
};

template <class K>
HilbertSeries quotient_hilbert(const Ideal<K>& I) {
  WK_ASSERT(I.is_homogeneous(), "Hilbert series needs homogeneous generators");
  std::vector<Mono> lms;
  for (const auto& g : I.basis()) lms.push_back(g.lm());
  return HilbertSeries{monomial_hilbert_numerator(std::move(lms)),
                       I.ring()->n};
}

// vector-space dimension of the quotient ring, nullopt when infinite;
// valid for arbitrary (not necessarily homogeneous) ideals
template <class K>
std::optional<Z> quotient_dim(const Ideal<K>& I) {
  const auto& gb = I.basis();
  const int n = I.ring()->n;
  std::vector<int> bound(static_cast<std::size_t>(n), -1);
  for (const auto& g : gb) {
    const Mono& m = g.lm();
    int var = -1;
    bool pure = true;
    for (int i = 0; i < n && pure; ++i)
      if (m.e[static_cast<std::size_t>(i)] > 0) {
        if (var >= 0)
          pure = false;
        else
          var = i;
      }
    if (m.is_one()) return Z(0);
    if (pure && var >= 0) {
      int& b = bound[static_cast<std::size_t>(var)];
      int e = m.e[static_cast<std::size_t>(var)];
      if (b < 0 || e < b) b = e;
    }
  }
  for (int i = 0; i < n; ++i)
    if (bound[static_cast<std::size_t>(i)] < 0) return std::nullopt;
  Z count(0);
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  std::vector<Mono> lms;
  for (const auto& g : gb) lms.push_back(g.lm());
  // walk the box below the pure-power bounds, counting standard monomials
  while (true) {
    Mono m;
    m.e = e;
    for (int v : e) m.deg += v;
    bool standard = true;
    for (const auto& l : lms)
      if (mono_divides(l, m)) {
        standard = false;
        break;
      }
    if (standard) ++count;
    int i = 0;
    while (i < n) {
      if (++e[static_cast<std::size_t>(i)] < bound[static_cast<std::size_t>(i)]) break;
      e[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return count;
}

// monomial basis of the quotient (finite case), ascending in the ring order
template <class K>
std::vector<Mono> standard_monomials(const Ideal<K>& I) {
  const auto& gb = I.basis();
  const int n = I.ring()->n;
  std::vector<int> bound(static_cast<std::size_t>(n), -1);
  std::vector<Mono> lms;
  for (const auto& g : gb) lms.push_back(g.lm());
  for (const auto& m : lms) {
    int var = -1;
    bool pure = true;
    for (int i = 0; i < n && pure; ++i)
      if (m.e[static_cast<std::size_t>(i)] > 0) {
        if (var >= 0)
          pure = false;
        else
          var = i;
      }
    if (pure && var >= 0) {
      int& b = bound[static_cast<std::size_t>(var)];
      if (b < 0 || m.e[static_cast<std::size_t>(var)] < b)
        b = m.e[static_cast<std::size_t>(var)];
    }
    if (m.is_one()) return {};
  }
  for (int i = 0; i < n; ++i)
    WK_ASSERT(bound[static_cast<std::size_t>(i)] >= 0,
              "standard monomial basis of an infinite quotient");
  std::vector<Mono> out;
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  while (true) {
    Mono m;
    m.e = e;
    for (int v : e) m.deg += v;
    bool standard = true;
    for (const auto& l : lms)
      if (mono_divides(l, m)) {
        standard = false;
        break;
      }
    if (standard) out.push_back(std::move(m));
    int i = 0;
    while (i < n) {
      if (++e[static_cast<std::size_t>(i)] < bound[static_cast<std::size_t>(i)]) break;
      e[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == n) break;
  }
  const Ring& R = *I.ring();
  std::sort(out.begin(), out.end(), [&R](const Mono& a, const Mono& b) {
    return mono_cmp(R, a, b) < 0;
  });
  return out;
}

}  // namespace weylkit::exact

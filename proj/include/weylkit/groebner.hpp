#pragma once

// Buchberger's algorithm with the Gebauer-Moeller pair update, full normal
// forms with optional quotient tracking, and reduced-basis postprocessing.
// Coefficients never leave the exact field; over Q every basis element is
// kept in primitive integer form to bound fraction growth.

#include <algorithm>
#include <vector>

#include "weylkit/polynomial.hpp"

namespace weylkit::exact {

// Fully reduce f modulo basis: returns r with f = sum quotients[i]*basis[i] + r
// and no monomial of r divisible by any leading monomial of the basis.
// Quotient tracking only happens when quotients != nullptr.
template <class K>
Poly<K> normal_form(const Poly<K>& f, const std::vector<Poly<K>>& basis,
                    std::vector<Poly<K>>* quotients = nullptr) {
  if (quotients) quotients->assign(basis.size(), Poly<K>(f.ring()));
  if (f.is_zero()) return f;
  const RingPtr& ring = f.ring();
  const Ring& R = *ring;
  std::vector<Term<K>> work(f.terms());
  std::size_t lead = 0;
  std::vector<Term<K>> rem;
  while (lead < work.size()) {
    const Mono& lm = work[lead].m;
    std::size_t gi = basis.size();
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!basis[i].is_zero() && mono_divides(basis[i].lm(), lm)) {
        gi = i;
        break;
      }
    if (gi == basis.size()) {
      rem.push_back(std::move(work[lead]));
      ++lead;
      continue;
    }
    const Poly<K>& g = basis[gi];
    K q = work[lead].c * FieldOps<K>::inv(g.lc());
    Mono m = mono_div(lm, g.lm());
    if (quotients) (*quotients)[gi] += Poly<K>::term(ring, m, q);
    // work[lead+1..] minus q * x^m * tail(g); leading terms cancel exactly
    std::vector<Term<K>> next;
    next.reserve(work.size() - lead + g.term_count());
    std::size_t a = lead + 1, b = 1;
    const auto& gt = g.terms();
    while (a < work.size() || b < gt.size()) {
      if (a >= work.size()) {
        K v = FieldOps<K>::neg(q * gt[b].c);
        if (!FieldOps<K>::is_zero(v))
          next.push_back({mono_mul(gt[b].m, m), std::move(v)});
        ++b;
        continue;
      }
      if (b >= gt.size()) {
        next.push_back(std::move(work[a++]));
        continue;
      }
      Mono gm = mono_mul(gt[b].m, m);
      int c = mono_cmp(R, work[a].m, gm);
      if (c > 0)
        next.push_back(std::move(work[a++]));
      else if (c < 0) {
        K v = FieldOps<K>::neg(q * gt[b].c);
        if (!FieldOps<K>::is_zero(v)) next.push_back({std::move(gm), std::move(v)});
        ++b;
      } else {
        K v = work[a].c - q * gt[b].c;
        if (!FieldOps<K>::is_zero(v)) next.push_back({std::move(gm), std::move(v)});
        ++a;
        ++b;
      }
    }
    work = std::move(next);
    lead = 0;
  }
  return Poly<K>::from_sorted(ring, std::move(rem));
}

template <class K>
Poly<K> s_polynomial(const Poly<K>& f, const Poly<K>& g) {
  Mono L = mono_lcm(f.lm(), g.lm());
  Poly<K> s(f.ring());
  s.add_scaled(FieldOps<K>::inv(f.lc()), mono_div(L, f.lm()), f);
  s.add_scaled(FieldOps<K>::neg(FieldOps<K>::inv(g.lc())), mono_div(L, g.lm()),
               g);
  return s;
}

namespace detail {

struct Pair {
  std::size_t i, j;
  Mono lcm;
};

// Gebauer-Moeller update: fold pairs (i, t) with the new element t into the
// pending set, applying the lcm-cover, product, and chain criteria.
template <class K>
void gm_update(std::vector<Pair>& pending, const std::vector<Poly<K>>& G,
               std::size_t t, bool use_product_criterion) {
  const Mono& lh = G[t].lm();
  std::vector<Pair> cand;
  cand.reserve(t);
  for (std::size_t i = 0; i < t; ++i)
    if (!G[i].is_zero()) cand.push_back({i, t, mono_lcm(G[i].lm(), lh)});
  std::vector<Pair> kept;
  for (std::size_t a = 0; a < cand.size(); ++a) {
    bool keep = mono_coprime(G[cand[a].i].lm(), lh);
    if (!keep) {
      keep = true;
      for (std::size_t b = a + 1; b < cand.size() && keep; ++b)
        if (mono_divides(cand[b].lcm, cand[a].lcm)) keep = false;
      for (const auto& d : kept)
        if (mono_divides(d.lcm, cand[a].lcm)) {
          keep = false;
          break;
        }
    }
    if (keep) kept.push_back(std::move(cand[a]));
  }
  // chain criterion against pairs not involving t
  std::vector<Pair> survivors;
  survivors.reserve(pending.size());
  for (auto& pr : pending) {
    bool drop = mono_divides(lh, pr.lcm) &&
                !(mono_lcm(G[pr.i].lm(), lh) == pr.lcm) &&
                !(mono_lcm(G[pr.j].lm(), lh) == pr.lcm);
    if (!drop) survivors.push_back(std::move(pr));
  }
  pending = std::move(survivors);
  for (auto& pr : kept) {
    if (use_product_criterion && mono_coprime(G[pr.i].lm(), lh)) continue;
    pending.push_back(std::move(pr));
  }
}

}  // namespace detail

// Reduced Groebner basis of the ideal generated by gens, in the ring's order.
template <class K>
std::vector<Poly<K>> groebner_basis(const RingPtr& ring,
                                    std::vector<Poly<K>> gens) {
  std::vector<Poly<K>> G;
  std::vector<detail::Pair> pending;
  auto absorb = [&](Poly<K> r) {
    normalize_unit(r);
    G.push_back(std::move(r));
    detail::gm_update(pending, G, G.size() - 1, true);
  };
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    Poly<K> r = normal_form(g, G);
    if (!r.is_zero()) absorb(std::move(r));
  }
  while (!pending.empty()) {
    // normal selection: smallest lcm in the ring order
    std::size_t best = 0;
    for (std::size_t k = 1; k < pending.size(); ++k)
      if (mono_cmp(*ring, pending[k].lcm, pending[best].lcm) < 0) best = k;
    detail::Pair pr = std::move(pending[best]);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    Poly<K> r = normal_form(s_polynomial(G[pr.i], G[pr.j]), G);
    if (!r.is_zero()) absorb(std::move(r));
  }
  // minimalize: drop elements whose leading monomial another one divides
  std::vector<Poly<K>> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j)
      if (j != i && mono_divides(G[j].lm(), G[i].lm()) &&
          !(G[j].lm() == G[i].lm() && j > i))
        redundant = true;
    if (!redundant) minimal.push_back(G[i]);
  }
  // tail-reduce each against the rest
  std::vector<Poly<K>> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly<K>> others;
    others.reserve(minimal.size() - 1);
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly<K> r = normal_form(minimal[i], others);
    WK_ASSERT(!r.is_zero(), "minimal basis element reduced to zero");
    normalize_unit(r);
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&ring](const Poly<K>& a, const Poly<K>& b) {
              return mono_cmp(*ring, a.lm(), b.lm()) > 0;
            });
  return reduced;
}

// true iff f lies in the ideal with the given Groebner basis
template <class K>
bool reduces_to_zero(const Poly<K>& f, const std::vector<Poly<K>>& gb) {
  return normal_form(f, gb).is_zero();
}

}  // namespace weylkit::exact

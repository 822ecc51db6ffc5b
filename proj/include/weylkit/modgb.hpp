#pragma once

// Groebner bases for submodules of free modules R^r, with representation
// tracking, Schreyer syzygies, and division with remainder.  The product
// criterion is never used here (it is invalid for modules); the chain
// criterion is kept, since dropped pairs have syzygies generated by the
// surviving ones.

#include <vector>

#include "weylkit/groebner.hpp"

namespace weylkit::exact {

template <class K>
struct MVec {
  std::vector<Poly<K>> c;

  static MVec zero(const RingPtr& ring, int rank) {
    MVec v;
    v.c.assign(static_cast<std::size_t>(rank), Poly<K>(ring));
    return v;
  }
  static MVec unit(const RingPtr& ring, int rank, int comp) {
    MVec v = zero(ring, rank);
    v.c[static_cast<std::size_t>(comp)] =
        Poly<K>::constant(ring, FieldOps<K>::one());
    return v;
  }
  int rank() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    for (const auto& p : c)
      if (!p.is_zero()) return false;
    return true;
  }
  void add_scaled(const K& s, const Mono& m, const MVec& g) {
    WK_ASSERT(c.size() == g.c.size(), "module rank mismatch");
    for (std::size_t i = 0; i < c.size(); ++i)
      c[i].add_scaled(s, m, g.c[i]);
  }
  friend MVec operator+(const MVec& a, const MVec& b) {
    MVec r = a;
    r.add_scaled(FieldOps<K>::one(), Mono::one(mono_size(a)), b);
    return r;
  }
  friend MVec operator-(const MVec& a, const MVec& b) {
    MVec r = a;
    r.add_scaled(FieldOps<K>::neg(FieldOps<K>::one()), Mono::one(mono_size(a)),
                 b);
    return r;
  }
  MVec scaled(const Poly<K>& f) const {
    MVec r = *this;
    for (auto& p : r.c) p = p * f;
    return r;
  }
  friend bool operator==(const MVec& a, const MVec& b) { return a.c == b.c; }

private:
  static int mono_size(const MVec& a) {
    for (const auto& p : a.c)
      if (p.ring()) return p.ring()->n;
    return 0;
  }
};

// Term-over-position order, optionally twisted by Schreyer monomials: e_i is
// weighted by twists[i], ties broken by component (earlier is larger).
struct ModOrder {
  const Ring* ring = nullptr;
  std::vector<Mono> twists;

  int cmp(const Mono& ma, int ca, const Mono& mb, int cb) const {
    int c;
    if (twists.empty())
      c = mono_cmp(*ring, ma, mb);
    else
      c = mono_cmp(*ring,
                   mono_mul(ma, twists[static_cast<std::size_t>(ca)]),
                   mono_mul(mb, twists[static_cast<std::size_t>(cb)]));
    if (c != 0) return c;
    if (ca == cb) return 0;
    return ca < cb ? 1 : -1;
  }
};

template <class K>
struct ModLead {
  int comp = -1;
  Mono m;
  K c;
};

template <class K>
ModLead<K> mvec_lead(const ModOrder& ord, const MVec<K>& v) {
  ModLead<K> best;
  for (int i = 0; i < v.rank(); ++i) {
    const Poly<K>& p = v.c[static_cast<std::size_t>(i)];
    if (p.is_zero()) continue;
    if (best.comp < 0 || ord.cmp(p.lm(), i, best.m, best.comp) > 0) {
      best.comp = i;
      best.m = p.lm();
      best.c = p.lc();
    }
  }
  WK_ASSERT(best.comp >= 0, "leading term of zero module element");
  return best;
}

// Full normal form of f modulo basis; quotients (when requested) satisfy
// f = sum quotients[i] * basis[i] + remainder.
template <class K>
MVec<K> module_nf(const RingPtr& ring, const ModOrder& ord, const MVec<K>& f,
                  const std::vector<MVec<K>>& basis,
                  std::vector<Poly<K>>* quotients = nullptr) {
  if (quotients) quotients->assign(basis.size(), Poly<K>(ring));
  if (f.is_zero()) return f;
  MVec<K> p = f;
  std::vector<std::vector<Term<K>>> rem(static_cast<std::size_t>(f.rank()));
  while (!p.is_zero()) {
    ModLead<K> lt = mvec_lead(ord, p);
    std::size_t gi = basis.size();
    ModLead<K> gl;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].is_zero()) continue;
      ModLead<K> cand = mvec_lead(ord, basis[i]);
      if (cand.comp == lt.comp && mono_divides(cand.m, lt.m)) {
        gi = i;
        gl = cand;
        break;
      }
    }
    if (gi == basis.size()) {
      rem[static_cast<std::size_t>(lt.comp)].push_back({lt.m, lt.c});
      p.c[static_cast<std::size_t>(lt.comp)].add_scaled(
          FieldOps<K>::neg(lt.c), Mono::one(ring->n),
          Poly<K>::term(ring, lt.m, FieldOps<K>::one()));
      continue;
    }
    K q = lt.c * FieldOps<K>::inv(gl.c);
    Mono m = mono_div(lt.m, gl.m);
    if (quotients) (*quotients)[gi] += Poly<K>::term(ring, m, q);
    p.add_scaled(FieldOps<K>::neg(q), m, basis[gi]);
  }
  MVec<K> r = MVec<K>::zero(ring, f.rank());
  for (std::size_t i = 0; i < rem.size(); ++i)
    r.c[i] = Poly<K>::from_sorted(ring, std::move(rem[i]));
  return r;
}

template <class K>
void normalize_unit(MVec<K>& v, const ModOrder& ord) {
  if (v.is_zero()) return;
  ModLead<K> lt = mvec_lead(ord, v);
  K inv = FieldOps<K>::inv(lt.c);
  for (auto& p : v.c) p = p * inv;
}

template <class K>
struct ModuleGB {
  std::vector<MVec<K>> gens;             // the Groebner basis
  std::vector<std::vector<Poly<K>>> reps;  // gens[k] = sum_j reps[k][j] * input[j]
};

namespace detail {

struct MPair {
  std::size_t i, j;
  Mono lcm;
};

template <class K>
void module_gm_update(std::vector<MPair>& pending,
                      const std::vector<MVec<K>>& G,
                      const std::vector<ModLead<K>>& leads, const ModOrder& ord,
                      std::size_t t) {
  (void)ord;
  const ModLead<K>& lh = leads[t];
  std::vector<MPair> cand;
  for (std::size_t i = 0; i < t; ++i) {
    if (G[i].is_zero() || leads[i].comp != lh.comp) continue;
    cand.push_back({i, t, mono_lcm(leads[i].m, lh.m)});
  }
  std::vector<MPair> kept;
  for (std::size_t a = 0; a < cand.size(); ++a) {
    bool keep = true;
    for (std::size_t b = a + 1; b < cand.size() && keep; ++b)
      if (mono_divides(cand[b].lcm, cand[a].lcm)) keep = false;
    for (std::size_t b = 0; b < kept.size() && keep; ++b)
      if (mono_divides(kept[b].lcm, cand[a].lcm)) keep = false;
    if (keep) kept.push_back(std::move(cand[a]));
  }
  std::vector<MPair> survivors;
  for (auto& pr : pending) {
    bool same_comp = leads[pr.i].comp == lh.comp;
    bool drop = same_comp && mono_divides(lh.m, pr.lcm) &&
                !(mono_lcm(leads[pr.i].m, lh.m) == pr.lcm) &&
                !(mono_lcm(leads[pr.j].m, lh.m) == pr.lcm);
    if (!drop) survivors.push_back(std::move(pr));
  }
  pending = std::move(survivors);
  for (auto& pr : kept) pending.push_back(std::move(pr));
}

}  // namespace detail

// Groebner basis of the submodule generated by input, tracking how each basis
// element is written in terms of the input.
template <class K>
ModuleGB<K> module_groebner(const RingPtr& ring, const ModOrder& ord,
                            const std::vector<MVec<K>>& input) {
  ModuleGB<K> out;
  std::vector<ModLead<K>> leads;
  std::vector<detail::MPair> pending;
  auto absorb = [&](MVec<K> v, std::vector<Poly<K>> rep) {
    ModLead<K> lt = mvec_lead(ord, v);
    K inv = FieldOps<K>::inv(lt.c);
    for (auto& p : v.c) p = p * inv;
    for (auto& p : rep) p = p * inv;
    out.gens.push_back(std::move(v));
    out.reps.push_back(std::move(rep));
    leads.push_back(mvec_lead(ord, out.gens.back()));
    detail::module_gm_update(pending, out.gens, leads, ord, out.gens.size() - 1);
  };
  for (std::size_t k = 0; k < input.size(); ++k) {
    if (input[k].is_zero()) continue;
    std::vector<Poly<K>> q;
    MVec<K> r = module_nf(ring, ord, input[k], out.gens, &q);
    if (r.is_zero()) continue;
    std::vector<Poly<K>> rep(input.size(), Poly<K>(ring));
    rep[k] = Poly<K>::constant(ring, FieldOps<K>::one());
    for (std::size_t i = 0; i < out.gens.size(); ++i)
      for (std::size_t j = 0; j < input.size(); ++j)
        rep[j] -= q[i] * out.reps[i][j];
    absorb(std::move(r), std::move(rep));
  }
  while (!pending.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pending.size(); ++k)
      if (mono_cmp(*ring, pending[k].lcm, pending[best].lcm) < 0) best = k;
    detail::MPair pr = pending[best];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    const ModLead<K>&la = leads[pr.i], &lb = leads[pr.j];
    Mono ma = mono_div(pr.lcm, la.m), mb = mono_div(pr.lcm, lb.m);
    MVec<K> s = MVec<K>::zero(ring, out.gens[pr.i].rank());
    s.add_scaled(FieldOps<K>::inv(la.c), ma, out.gens[pr.i]);
    s.add_scaled(FieldOps<K>::neg(FieldOps<K>::inv(lb.c)), mb, out.gens[pr.j]);
    std::vector<Poly<K>> q;
    MVec<K> r = module_nf(ring, ord, s, out.gens, &q);
    if (r.is_zero()) continue;
    std::vector<Poly<K>> rep(out.reps.front().size(), Poly<K>(ring));
    Poly<K> fa = Poly<K>::term(ring, ma, FieldOps<K>::inv(la.c));
    Poly<K> fb = Poly<K>::term(ring, mb, FieldOps<K>::inv(lb.c));
    for (std::size_t j = 0; j < rep.size(); ++j)
      rep[j] = fa * out.reps[pr.i][j] - fb * out.reps[pr.j][j];
    for (std::size_t i = 0; i < out.gens.size(); ++i)
      for (std::size_t j = 0; j < rep.size(); ++j)
        rep[j] -= q[i] * out.reps[i][j];
    absorb(std::move(r), std::move(rep));
  }
  return out;
}

// Schreyer generators of Syz(gb): one per surviving S-pair of the final
// basis; a Groebner basis under the induced Schreyer order.
template <class K>
std::vector<MVec<K>> syzygies_of_gb(const RingPtr& ring, const ModOrder& ord,
                                    const std::vector<MVec<K>>& gb) {
  std::vector<ModLead<K>> leads;
  leads.reserve(gb.size());
  for (const auto& g : gb) leads.push_back(mvec_lead(ord, g));
  std::vector<MVec<K>> syz;
  for (std::size_t i = 0; i < gb.size(); ++i)
    for (std::size_t j = i + 1; j < gb.size(); ++j) {
      if (leads[i].comp != leads[j].comp) continue;
      Mono L = mono_lcm(leads[i].m, leads[j].m);
      // chain criterion: a third element dividing the lcm strictly finer
      bool skip = false;
      for (std::size_t k = 0; k < gb.size() && !skip; ++k) {
        if (k == i || k == j || leads[k].comp != leads[i].comp) continue;
        if (mono_divides(leads[k].m, L) &&
            !(mono_lcm(leads[i].m, leads[k].m) == L) &&
            !(mono_lcm(leads[j].m, leads[k].m) == L))
          skip = true;
      }
      if (skip) continue;
      Mono ma = mono_div(L, leads[i].m), mb = mono_div(L, leads[j].m);
      MVec<K> s = MVec<K>::zero(ring, gb[static_cast<std::size_t>(i)].rank());
      s.add_scaled(FieldOps<K>::inv(leads[i].c), ma, gb[i]);
      s.add_scaled(FieldOps<K>::neg(FieldOps<K>::inv(leads[j].c)), mb, gb[j]);
      std::vector<Poly<K>> q;
      MVec<K> r = module_nf(ring, ord, s, gb, &q);
      WK_ASSERT(r.is_zero(), "S-pair of a Groebner basis fails to reduce");
      MVec<K> sg = MVec<K>::zero(ring, static_cast<int>(gb.size()));
      sg.c[i] = Poly<K>::term(ring, ma, FieldOps<K>::inv(leads[i].c));
      sg.c[j] =
          Poly<K>::term(ring, mb, FieldOps<K>::neg(FieldOps<K>::inv(leads[j].c)));
      for (std::size_t k = 0; k < gb.size(); ++k) sg.c[k] -= q[k];
      syz.push_back(std::move(sg));
    }
  return syz;
}

// Generators of Syz(input) for an arbitrary finite generating set.
template <class K>
std::vector<MVec<K>> syzygies(const RingPtr& ring, const ModOrder& ord,
                              const std::vector<MVec<K>>& input) {
  ModuleGB<K> gb = module_groebner(ring, ord, input);
  std::vector<MVec<K>> out;
  // image of Syz(gb) under gb = A * input
  for (const auto& s : syzygies_of_gb(ring, ord, gb.gens)) {
    MVec<K> v = MVec<K>::zero(ring, static_cast<int>(input.size()));
    for (std::size_t k = 0; k < gb.gens.size(); ++k)
      for (std::size_t j = 0; j < input.size(); ++j)
        v.c[j] += s.c[k] * gb.reps[k][j];
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  // rows of I - B*A where input = B * gb
  for (std::size_t k = 0; k < input.size(); ++k) {
    std::vector<Poly<K>> b;
    MVec<K> r = module_nf(ring, ord, input[k], gb.gens, &b);
    WK_ASSERT(r.is_zero(), "input fails to reduce by its own basis");
    MVec<K> v = MVec<K>::zero(ring, static_cast<int>(input.size()));
    v.c[k] = Poly<K>::constant(ring, FieldOps<K>::one());
    for (std::size_t i = 0; i < gb.gens.size(); ++i)
      for (std::size_t j = 0; j < input.size(); ++j)
        v.c[j] -= b[i] * gb.reps[i][j];
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace weylkit::exact

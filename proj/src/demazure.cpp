#include "weylkit/demazure.hpp"

#include <functional>
#include <map>
#include <utility>

#include "weylkit/error.hpp"
#include "weylkit/graphs.hpp"
#include "weylkit/groebner.hpp"
#include "weylkit/ideal.hpp"
#include "weylkit/invariants.hpp"
#include "weylkit/linalg.hpp"

namespace weylkit::cox {

using exact::FieldOps;
using exact::Mono;
using exact::Term;
using exact::Z;

namespace {

// Exact division by the variable x_v; every term must be divisible.
Poly<Q> divide_by_variable(const Poly<Q>& f, int v) {
  if (f.is_zero()) return f;
  std::vector<Term<Q>> out;
  out.reserve(f.term_count());
  for (const Term<Q>& t : f.terms()) {
    if (t.m.e[static_cast<std::size_t>(v)] < 1)
      throw_internal("divided difference left a remainder; the reflection "
                     "action and the variable conventions disagree");
    Mono m = t.m;
    --m.e[static_cast<std::size_t>(v)];
    --m.deg;
    out.push_back({std::move(m), t.c});
  }
  // dividing every term by the same variable preserves the term order
  return Poly<Q>::from_sorted(f.ring(), std::move(out));
}

// Offset of the requested block inside f's ring, validating membership.
int block_offset(const RootSystem& rs, const Poly<Q>& f, Block block) {
  const RingPtr& ring = f.ring();
  if (ring == rs.poly_ring()) {
    if (block != Block::x)
      throw_input("the y block was requested for a single-block polynomial");
    return 0;
  }
  if (ring == rs.pair_ring()) return block == Block::x ? 0 : rs.rank();
  throw_input("polynomial does not live in the root system's rings");
}

Poly<Q> x_linear(const RingPtr& ring, const std::vector<Q>& coords) {
  Poly<Q> out = Poly<Q>::zero(ring);
  for (std::size_t k = 0; k < coords.size(); ++k)
    if (coords[k] != 0)
      out += Poly<Q>::variable(ring, static_cast<int>(k)) * coords[k];
  return out;
}

// First nonzero integer vector c (max-norm staged, digits ordered
// 0, 1, -1, 2, -2, ...; last coordinate varies fastest) with
// c^T * diff != 0 as a row vector.
std::vector<Q> choose_linear_form(const Mat<Q>& diff) {
  const int n = diff.rows();
  for (int bound = 1; bound <= 4; ++bound) {
    std::vector<int> digits{0};
    for (int b = 1; b <= bound; ++b) {
      digits.push_back(b);
      digits.push_back(-b);
    }
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      std::vector<Q> c;
      bool nonzero = false;
      for (int k = 0; k < n; ++k) {
        int d = digits[idx[static_cast<std::size_t>(k)]];
        nonzero = nonzero || d != 0;
        c.push_back(Q(d));
      }
      if (nonzero) {
        bool hits = false;
        for (int j = 0; j < n && !hits; ++j) {
          Q s(0);
          for (int k = 0; k < n; ++k) s += c[static_cast<std::size_t>(k)] *
                                            diff.at(k, j);
          hits = s != 0;
        }
        if (hits) return c;
      }
      int pos = n - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 ==
                             digits.size()) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
    }
  }
  throw_internal("no small linear form separates two distinct graphs");
}

}  // namespace

Poly<Q> demazure_simple(const RootSystem& rs, const Poly<Q>& f, int i,
                        Block block) {
  const int n = rs.rank();
  if (i < 0 || i >= n) throw_input("simple reflection index out of range");
  if (f.is_zero()) return f;
  const int offset = block_offset(rs, f, block);
  const int N = f.ring()->n;
  Mat<Q> M = Mat<Q>::identity(N);
  const auto& c = rs.cartan();
  for (int j = 0; j < n; ++j)
    M.at(offset + i, offset + j) -=
        Q(c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
  return divide_by_variable(f - f.linear_substitute(M), offset + i);
}

Poly<Q> demazure(const RootSystem& rs, const Poly<Q>& f,
                 const std::vector<int>& word, Block block) {
  Poly<Q> out = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    out = demazure_simple(rs, out, *it, block);
  return out;
}

SchubertFamily schubert_family(const RootSystem& rs) {
  const int n = rs.rank();
  const RingPtr& ring = rs.pair_ring();
  SchubertFamily fam;
  fam.ring = ring;

  const int l = rs.length(rs.w0());
  Poly<Q> base = Poly<Q>::zero(ring);
  for (int j = 0; j < n; ++j)
    base += Poly<Q>::variable(ring, n + j) *
            rs.rho_check()[static_cast<std::size_t>(j)];
  Poly<Q> top = Poly<Q>::constant(ring, Q(1));
  Z fact(1);
  for (int k = 1; k <= l; ++k) {
    top = top * base;
    fact *= k;
  }
  top = top * Q(Z(1), fact);

  fam.r.assign(static_cast<std::size_t>(rs.order()), Poly<Q>::zero(ring));
  for (int w = 0; w < rs.order(); ++w) {
    const int u = rs.mult(rs.w0(), rs.inverse(w));
    Poly<Q> rw = demazure(rs, top, rs.element(u).word, Block::y);
    WK_ASSERT(!rw.is_zero() && rw.is_homogeneous() &&
                  rw.total_degree() == rs.length(w) &&
                  rw.degree_in_window(0, n) == 0,
              "Schubert family member has the wrong degree");
    fam.r[static_cast<std::size_t>(w)] = std::move(rw);
  }

  std::vector<Mat<Q>> gens;
  for (int s = 0; s < n; ++s) gens.push_back(rs.simple_var(s));
  exact::MatrixGroup<Q> grp = exact::matrix_group_closure(gens);
  exact::FundamentalInvariants<Q> inv =
      exact::fundamental_invariants(rs.poly_ring(), grp);
  std::vector<int> to_y(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) to_y[static_cast<std::size_t>(j)] = n + j;
  for (const Poly<Q>& p : inv.polys)
    fam.y_invariants.push_back(p.transport(ring, to_y));
  fam.invariant_degrees = inv.degrees;

  // linear independence of the family modulo the invariant ideal
  exact::Ideal<Q> iy(ring, fam.y_invariants);
  auto cmp = [&](const Mono& a, const Mono& b) {
    return exact::mono_cmp(*ring, a, b) > 0;
  };
  std::map<Mono, int, decltype(cmp)> row(cmp);
  std::vector<Poly<Q>> nfs;
  for (const Poly<Q>& rw : fam.r) {
    nfs.push_back(iy.reduce(rw));
    for (const Term<Q>& t : nfs.back().terms()) row.emplace(t.m, 0);
  }
  int next = 0;
  for (auto& kv : row) kv.second = next++;
  Mat<Q> A(next, rs.order());
  for (int w = 0; w < rs.order(); ++w)
    for (const Term<Q>& t : nfs[static_cast<std::size_t>(w)].terms())
      A.at(row.at(t.m), w) = t.c;
  if (exact::rank_of(A) != rs.order())
    throw_internal("Schubert family is linearly dependent in the "
                   "coinvariant algebra");
  return fam;
}

std::vector<Poly<Q>> expand_in_schubert_basis(const RootSystem& rs,
                                              const SchubertFamily& fam,
                                              const Poly<Q>& f) {
  const RingPtr& ring = fam.ring;
  const int n = rs.rank();
  std::vector<Poly<Q>> g(static_cast<std::size_t>(rs.order()),
                         Poly<Q>::zero(ring));
  if (f.is_zero()) return g;
  WK_ASSERT(f.ring() == ring, "polynomial ring mismatch");

  std::vector<int> to_pair(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) to_pair[static_cast<std::size_t>(j)] = j;

  for (const Poly<Q>& comp : f.homogeneous_components()) {
    const int d = comp.total_degree();

    struct Cand {
      int w;
      Poly<Q> shape;  // x-monomial times invariant monomial
      Poly<Q> val;    // shape * r[w]
    };
    std::vector<Cand> cands;
    for (int w = 0; w < rs.order(); ++w) {
      const int budget = d - rs.length(w);
      if (budget < 0) continue;
      // enumerate invariant exponent vectors with weighted degree
      // <= budget, carrying the partial product
      auto emit = [&](const Poly<Q>& invprod, int used) {
        const int a = budget - used;
        for (const Mono& m :
             exact::monomials_of_degree(rs.poly_ring(), a)) {
          Poly<Q> xm = Poly<Q>::term(rs.poly_ring(), m, Q(1))
                           .transport(ring, to_pair);
          Cand c;
          c.w = w;
          c.shape = xm * invprod;
          c.val = c.shape * fam.r[static_cast<std::size_t>(w)];
          cands.push_back(std::move(c));
        }
      };
      std::function<void(std::size_t, int, const Poly<Q>&)> rec =
          [&](std::size_t i, int used, const Poly<Q>& prod) {
            if (i == fam.y_invariants.size()) {
              emit(prod, used);
              return;
            }
            rec(i + 1, used, prod);
            const int di = fam.invariant_degrees[i];
            Poly<Q> p = prod;
            for (int e = 1; used + e * di <= budget; ++e) {
              p = p * fam.y_invariants[i];
              rec(i + 1, used + e * di, p);
            }
          };
      rec(0, 0, Poly<Q>::constant(ring, Q(1)));
    }

    auto cmp = [&](const Mono& a, const Mono& b) {
      return exact::mono_cmp(*ring, a, b) > 0;
    };
    std::map<Mono, int, decltype(cmp)> row(cmp);
    for (const Cand& c : cands)
      for (const Term<Q>& t : c.val.terms()) row.emplace(t.m, 0);
    for (const Term<Q>& t : comp.terms()) row.emplace(t.m, 0);
    int next = 0;
    for (auto& kv : row) kv.second = next++;

    Mat<Q> A(next, static_cast<int>(cands.size()));
    for (std::size_t k = 0; k < cands.size(); ++k)
      for (const Term<Q>& t : cands[k].val.terms())
        A.at(row.at(t.m), static_cast<int>(k)) = t.c;
    std::vector<Q> rhs(static_cast<std::size_t>(next), Q(0));
    for (const Term<Q>& t : comp.terms())
      rhs[static_cast<std::size_t>(row.at(t.m))] = t.c;

    if (exact::rank_of(A) != static_cast<int>(cands.size()))
      throw_internal("Schubert expansion shapes are linearly dependent");
    std::optional<std::vector<Q>> sol = exact::solve(A, rhs);
    if (!sol)
      throw_internal("Schubert expansion system is inconsistent");
    for (std::size_t k = 0; k < cands.size(); ++k)
      if ((*sol)[k] != 0)
        g[static_cast<std::size_t>(cands[k].w)] +=
            cands[k].shape * (*sol)[k];
  }
  return g;
}

FPackage construct_F(const RootSystem& rs, int order_bound) {
  if (rs.order() > order_bound)
    throw_input("group order exceeds the configured F-polynomial bound");
  const int n = rs.rank();
  const RingPtr& ring = rs.pair_ring();
  const int w0 = rs.w0();

  FPackage pkg;
  pkg.ring = ring;
  pkg.family = schubert_family(rs);
  pkg.c.resize(static_cast<std::size_t>(rs.order()));

  pkg.qprime = Poly<Q>::constant(ring, Q(1));
  const Mat<Q>& P0 = rs.element(w0).pt;
  for (int w = 0; w < rs.order(); ++w) {
    if (w == w0) continue;
    Mat<Q> diff = P0;
    const Mat<Q>& Pw = rs.element(w).pt;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) diff.at(i, j) -= Pw.at(i, j);
    // the factor must not vanish on the graph of w0: c^T(P0 - Pw) != 0
    std::vector<Q> c = choose_linear_form(diff);
    std::vector<Poly<Q>> imgs = graph_images(rs, w);
    Poly<Q> factor = Poly<Q>::zero(ring);
    for (int j = 0; j < n; ++j)
      if (c[static_cast<std::size_t>(j)] != 0)
        factor += (Poly<Q>::variable(ring, n + j) -
                   imgs[static_cast<std::size_t>(n + j)]) *
                  c[static_cast<std::size_t>(j)];
    pkg.c[static_cast<std::size_t>(w)] = std::move(c);
    pkg.qprime = pkg.qprime * factor;
  }

  pkg.g = expand_in_schubert_basis(rs, pkg.family, pkg.qprime);

  std::vector<Poly<Q>> diag;
  for (int i = 0; i < n; ++i) diag.push_back(Poly<Q>::variable(ring, i));
  for (int j = 0; j < n; ++j) diag.push_back(Poly<Q>::variable(ring, j));
  pkg.q = Poly<Q>::zero(ring);
  for (int w = 0; w < rs.order(); ++w) {
    pkg.g_xx.push_back(pkg.g[static_cast<std::size_t>(w)].is_zero()
                           ? Poly<Q>::zero(ring)
                           : pkg.g[static_cast<std::size_t>(w)].substitute(
                                 ring, diag));
    pkg.q += pkg.g_xx.back() * pkg.family.r[static_cast<std::size_t>(w)];
  }

  pkg.coroot_product = Poly<Q>::constant(ring, Q(1));
  for (const std::vector<Q>& gamma : rs.positive_coroots())
    pkg.coroot_product = pkg.coroot_product * x_linear(ring, gamma);

  pkg.q_at_w0 = graph_eval(rs, pkg.q, w0);
  for (int v = 0; v < rs.order(); ++v) {
    if (v == w0) continue;
    if (!graph_eval(rs, pkg.q, v).is_zero())
      throw_internal("Q does not vanish on the graph of " + rs.word_str(v));
  }

  std::vector<Poly<Q>> quot;
  Poly<Q> rem = exact::normal_form(pkg.q * pkg.coroot_product, {pkg.q_at_w0},
                                   &quot);
  if (!rem.is_zero())
    throw_internal("division by Q(x, w0 x) left a remainder");
  pkg.f = quot[0];

  for (int v = 0; v < rs.order(); ++v) {
    if (v == w0) continue;
    if (!graph_eval(rs, pkg.f, v).is_zero())
      throw_internal("F does not vanish on the graph of " + rs.word_str(v));
  }
  if (graph_eval(rs, pkg.f, w0) != pkg.coroot_product)
    throw_internal("F on the graph of w0 is not the coroot product");

  std::vector<int> all(static_cast<std::size_t>(rs.order()));
  for (int w = 0; w < rs.order(); ++w) all[static_cast<std::size_t>(w)] = w;
  GraphIdealBundle bundle = union_ideal(rs, all);
  if (bundle.j_s.reduce(pkg.f).is_zero())
    throw_internal("F vanishes in the coinvariant algebra");
  return pkg;
}

BggChainReport bgg_chain_report(const RootSystem& rs, const FPackage& pkg,
                                const std::vector<int>& word) {
  const int r = rs.length(rs.w0());
  if (static_cast<int>(word.size()) != r ||
      rs.element_by_word(word) != rs.w0())
    throw_input("word is not a reduced expression for the longest element");
  const int n = rs.rank();
  const RingPtr& ring = pkg.ring;

  BggChainReport rep;
  rep.word = word;

  // w_i = s_{a_i} ... s_{a_1}
  std::vector<int> wi(static_cast<std::size_t>(r) + 1);
  wi[0] = rs.element_by_word({});
  for (int i = 1; i <= r; ++i)
    wi[static_cast<std::size_t>(i)] =
        rs.mult(rs.element_by_word({word[static_cast<std::size_t>(i - 1)]}),
                wi[static_cast<std::size_t>(i - 1)]);

  // gamma_i = w_{i-1}^{-1} applied to the coroot of letter a_i
  std::vector<Poly<Q>> gamma(static_cast<std::size_t>(r) + 1,
                             Poly<Q>::zero(ring));
  Poly<Q> gamma_product = Poly<Q>::constant(ring, Q(1));
  for (int i = 1; i <= r; ++i) {
    const Mat<Q>& M =
        rs.element(rs.inverse(wi[static_cast<std::size_t>(i - 1)])).var;
    std::vector<Q> coords;
    for (int k = 0; k < n; ++k)
      coords.push_back(M.at(k, word[static_cast<std::size_t>(i - 1)]));
    gamma[static_cast<std::size_t>(i)] = x_linear(ring, coords);
    gamma_product = gamma_product * gamma[static_cast<std::size_t>(i)];
    rep.gamma.push_back(gamma[static_cast<std::size_t>(i)].str());
  }
  if (gamma_product != pkg.coroot_product)
    throw_internal("chain coroots do not multiply to the positive-coroot "
                   "product");

  std::vector<Poly<Q>> suffix(static_cast<std::size_t>(r) + 1,
                              Poly<Q>::constant(ring, Q(1)));
  for (int i = r - 1; i >= 0; --i)
    suffix[static_cast<std::size_t>(i)] =
        suffix[static_cast<std::size_t>(i + 1)] *
        gamma[static_cast<std::size_t>(i + 1)];

  for (int i = 0; i <= r; ++i) {
    std::vector<int> vword(word.begin() + i, word.end());
    Poly<Q> qi = demazure(rs, pkg.q, vword, Block::y);

    BggChainRow rowr;
    rowr.i = i;
    rowr.w_i = rs.word_str(wi[static_cast<std::size_t>(i)]);
    rowr.v_i = rs.word_str(rs.element_by_word(vword));
    rowr.y_degree = qi.degree_in_window(n, 2 * n);
    if (rowr.y_degree != i)
      throw_internal("chain polynomial at i=" + std::to_string(i) +
                     " has y-degree " + std::to_string(rowr.y_degree));

    Poly<Q> lhs = graph_eval(rs, qi, wi[static_cast<std::size_t>(i)]) *
                  suffix[static_cast<std::size_t>(i)];
    Poly<Q> rhs = pkg.q_at_w0 * Q((r - i) % 2 == 0 ? 1 : -1);
    if (lhs != rhs)
      throw_internal("chain evaluation identity failed at i=" +
                     std::to_string(i));

    for (int w = 0; w < rs.order(); ++w) {
      if (rs.bruhat_leq(wi[static_cast<std::size_t>(i)], w)) continue;
      if (!graph_eval(rs, qi, w).is_zero())
        throw_internal("chain polynomial at i=" + std::to_string(i) +
                       " does not vanish on the graph of " + rs.word_str(w));
      ++rowr.vanishing_checked;
    }
    rep.rows.push_back(std::move(rowr));
  }

  Poly<Q> top = pkg.g_xx[static_cast<std::size_t>(rs.w0())] *
                pkg.coroot_product;
  if (top != pkg.q_at_w0 * Q(r % 2 == 0 ? 1 : -1))
    throw_internal("top coefficient identity failed");
  rep.top_coefficient_identity = true;
  return rep;
}

}  // namespace weylkit::cox

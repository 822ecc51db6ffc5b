#pragma once

// Finite matrix groups acting on polynomial variables: closure, Reynolds
// averaging, invariant bases per degree, fundamental invariants with the
// free-rank verification, Molien series, and pseudo-reflection detection.
//
// Convention: a matrix M acts on variables by x_j -> sum_i M(i,j) x_i, so
// substitution uses columns and the action on polynomials is homomorphic.

#include <vector>

#include "weylkit/ideal.hpp"
#include "weylkit/linalg.hpp"
#include "weylkit/unipoly.hpp"

namespace weylkit::exact {

template <class K>
Poly<K> act_poly(const Mat<K>& M, const Poly<K>& f) {
  return f.linear_substitute(M);
}

template <class K>
struct MatrixGroup {
  std::vector<Mat<K>> elements;            // element 0 is the identity
  std::vector<std::vector<int>> words;     // generator word per element
  std::size_t order() const { return elements.size(); }
};

template <class K>
MatrixGroup<K> matrix_group_closure(const std::vector<Mat<K>>& gens,
                                    std::size_t cap = 20000) {
  WK_ASSERT(!gens.empty(), "group closure needs at least one generator");
  int n = gens.front().rows();
  MatrixGroup<K> g;
  g.elements.push_back(Mat<K>::identity(n));
  g.words.push_back({});
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Mat<K> m = gens[s] * g.elements[i];
      bool seen = false;
      for (const auto& e : g.elements)
        if (e == m) {
          seen = true;
          break;
        }
      if (seen) continue;
      std::vector<int> w = g.words[i];
      w.push_back(static_cast<int>(s));
      g.elements.push_back(std::move(m));
      g.words.push_back(std::move(w));
      if (g.elements.size() > cap) throw_input("group closure exceeds cap; not finite?");
    }
  }
  return g;
}

// average of the orbit of f
template <class K>
Poly<K> reynolds(const MatrixGroup<K>& g, const Poly<K>& f) {
  Poly<K> acc(f.ring());
  for (const auto& m : g.elements) acc += act_poly(m, f);
  K inv = FieldOps<K>::inv(FieldOps<K>::from_int(static_cast<long>(g.order())));
  return acc * inv;
}

inline std::vector<Mono> monomials_of_degree(const RingPtr& ring, int d) {
  std::vector<Mono> out;
  Mono m = Mono::one(ring->n);
  m.deg = d;
  std::vector<int>& e = m.e;
  // lexicographic walk over compositions of d into n parts
  int n = ring->n;
  std::vector<int> comp(static_cast<std::size_t>(n), 0);
  comp[0] = d;
  while (true) {
    e = comp;
    out.push_back(m);
    // next composition
    if (n == 1) break;
    int i = n - 2;
    while (i >= 0 && comp[static_cast<std::size_t>(i)] == 0) --i;
    if (i < 0) break;
    --comp[static_cast<std::size_t>(i)];
    int rest = 1;
    for (int j = i + 1; j < n; ++j) {
      rest += comp[static_cast<std::size_t>(j)];
      comp[static_cast<std::size_t>(j)] = 0;
    }
    comp[static_cast<std::size_t>(i) + 1] = rest;
  }
  return out;
}

// basis of the degree-d invariants, via Reynolds images of monomials
template <class K>
std::vector<Poly<K>> invariant_basis(const RingPtr& ring,
                                     const MatrixGroup<K>& g, int d) {
  std::vector<Mono> mons = monomials_of_degree(ring, d);
  // rows = candidate invariants as coefficient vectors over mons
  Mat<K> rows(static_cast<int>(mons.size()), static_cast<int>(mons.size()));
  std::vector<Poly<K>> images;
  for (std::size_t i = 0; i < mons.size(); ++i) {
    Poly<K> r = reynolds(g, Poly<K>::term(ring, mons[i], FieldOps<K>::one()));
    images.push_back(r);
    for (const auto& t : r.terms()) {
      for (std::size_t j = 0; j < mons.size(); ++j)
        if (t.m == mons[j]) {
          rows.at(static_cast<int>(i), static_cast<int>(j)) = t.c;
          break;
        }
    }
  }
  std::vector<int> pivots = rref(rows);
  std::vector<Poly<K>> basis;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Poly<K> f(ring);
    for (std::size_t j = 0; j < mons.size(); ++j) {
      const K& c = rows.at(static_cast<int>(r), static_cast<int>(j));
      if (!FieldOps<K>::is_zero(c)) f += Poly<K>::term(ring, mons[j], c);
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

// Molien series of the invariant ring: (1/|H|) sum_h 1/det(1 - t M_h)
template <class K>
std::vector<Q> molien_series(const MatrixGroup<K>& g, int bound);

template <class K>
struct FundamentalInvariants {
  std::vector<Poly<K>> polys;
  std::vector<int> degrees;
};

// Homogeneous algebraically independent invariants f_1..f_n with
// prod deg = |H|, built degree by degree; the free-rank condition
// dim Sym/(f_1..f_n) = |H| is verified before returning.  Groups not
// generated by pseudo-reflections are reported as input errors.
template <class K>
FundamentalInvariants<K> fundamental_invariants(const RingPtr& ring,
                                                const MatrixGroup<K>& g) {
  const int n = ring->n;
  const long order = static_cast<long>(g.order());
  FundamentalInvariants<K> out;
  long degree_product = 1;
  for (int d = 1; static_cast<int>(out.polys.size()) < n; ++d) {
    if (d > static_cast<int>(g.order()) + 1)
      throw_input("no fundamental invariant system below the order bound; "
                  "group is not generated by pseudo-reflections");
    for (Poly<K>& f : invariant_basis(ring, g, d)) {
      if (static_cast<int>(out.polys.size()) == n) break;
      Ideal<K> chosen(ring, out.polys);
      if (!out.polys.empty() && chosen.contains(f)) continue;
      degree_product *= d;
      if (degree_product > order)
        throw_input("invariant degrees exceed the group order; group is not "
                    "generated by pseudo-reflections");
      normalize_unit(f);
      out.polys.push_back(f);
      out.degrees.push_back(d);
    }
  }
  if (degree_product != order)
    throw_input("invariant degree product differs from the group order; group "
                "is not generated by pseudo-reflections");
  auto dim = quotient_dim(Ideal<K>(ring, out.polys));
  if (!dim || *dim != order)
    throw_input("coinvariant dimension differs from the group order; "
                "fundamental invariants rejected");
  return out;
}

// graded dimensions of Sym/(f_1..f_n): the coinvariant algebra of the group
template <class K>
std::vector<int> coinvariant_dims(const RingPtr& ring,
                                  const std::vector<Poly<K>>& invariants) {
  auto sm = standard_monomials(Ideal<K>(ring, invariants));
  std::vector<int> dims;
  for (const auto& m : sm) {
    while (static_cast<int>(dims.size()) <= m.deg) dims.push_back(0);
    ++dims[static_cast<std::size_t>(m.deg)];
  }
  return dims;
}

// indices of the pseudo-reflections: elements with rank(M - 1) == 1
template <class K>
std::vector<std::size_t> reflection_indices(const MatrixGroup<K>& g) {
  std::vector<std::size_t> out;
  int n = g.elements.front().rows();
  for (std::size_t i = 1; i < g.elements.size(); ++i) {
    Mat<K> d = g.elements[i] - Mat<K>::identity(n);
    if (rank_of(d) == 1) out.push_back(i);
  }
  return out;
}

// coefficient vector of the reflecting-hyperplane form: a nonzero column of
// M - 1 spans the nontrivial eigenline of the action on linear forms
template <class K>
std::vector<K> reflection_form(const Mat<K>& M) {
  int n = M.rows();
  Mat<K> d = M - Mat<K>::identity(n);
  for (int j = 0; j < n; ++j) {
    std::vector<K> col(static_cast<std::size_t>(n));
    bool nz = false;
    for (int i = 0; i < n; ++i) {
      col[static_cast<std::size_t>(i)] = d.at(i, j);
      if (!FieldOps<K>::is_zero(col[static_cast<std::size_t>(i)])) nz = true;
    }
    if (nz) return col;
  }
  throw_internal("reflection form of the identity");
}

// eigenvalue of the reflection on its hyperplane form
template <class K>
K reflection_eigenvalue(const Mat<K>& M, const std::vector<K>& form) {
  std::vector<K> image = M.apply(form);
  for (std::size_t i = 0; i < form.size(); ++i)
    if (!FieldOps<K>::is_zero(form[i])) {
      K chi = image[i] * FieldOps<K>::inv(form[i]);
      // verify the eigen relation on every coordinate
      for (std::size_t j = 0; j < form.size(); ++j)
        WK_ASSERT(image[j] == chi * form[j], "form is not an eigenvector");
      return chi;
    }
  throw_internal("zero reflection form");
}

namespace detail {

// cofactor-expansion determinant of a small matrix of univariate polynomials
template <class K>
UPoly<K> poly_det(const std::vector<std::vector<UPoly<K>>>& a) {
  std::size_t n = a.size();
  if (n == 1) return a[0][0];
  UPoly<K> det;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<UPoly<K>>> minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<UPoly<K>> row;
      row.reserve(n - 1);
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    UPoly<K> contrib = a[0][j] * poly_det(minor);
    det = j % 2 == 0 ? det + contrib : det - contrib;
  }
  return det;
}

// det(1 - t M)
template <class K>
UPoly<K> one_minus_t_det(const Mat<K>& m) {
  int n = m.rows();
  std::vector<std::vector<UPoly<K>>> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<K> coef{i == j ? FieldOps<K>::one() : FieldOps<K>::zero(),
                          FieldOps<K>::neg(m.at(i, j))};
      a[static_cast<std::size_t>(i)].push_back(UPoly<K>(std::move(coef)));
    }
  return poly_det(a);
}

}  // namespace detail

template <class K>
std::vector<Q> molien_series(const MatrixGroup<K>& g, int bound) {
  RatFun<K> acc = RatFun<K>::zero();
  for (const auto& m : g.elements)
    acc = acc + RatFun<K>{UPoly<K>::constant(FieldOps<K>::one()),
                          detail::one_minus_t_det(m)};
  K inv = FieldOps<K>::inv(FieldOps<K>::from_int(static_cast<long>(g.order())));
  acc = acc.scaled(inv);
  std::vector<K> c = acc.series(bound);
  std::vector<Q> out;
  out.reserve(c.size());
  for (const auto& v : c) out.push_back(FieldOps<K>::to_rational(v));
  return out;
}

}  // namespace weylkit::exact

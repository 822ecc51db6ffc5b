#pragma once

// Divided-difference (Demazure) operators, the Schubert-type basis of the
// coinvariant algebra, and the F-polynomial pipeline built from it.

#include <string>
#include <vector>

#include "weylkit/polynomial.hpp"
#include "weylkit/rootsystem.hpp"

namespace weylkit::cox {

using exact::Poly;

enum class Block { x, y };

// (f - s_i f) / x_i taken in the chosen variable block.  f may live in
// rs.poly_ring() (x block only) or rs.pair_ring().  The division is exact
// for every polynomial; a remainder means the action and the variables
// disagree and is reported as an internal error.
Poly<Q> demazure_simple(const RootSystem& rs, const Poly<Q>& f, int i,
                        Block block = Block::x);

// D_{s_{a_1}} ... D_{s_{a_r}} (f): the last letter acts first.
Poly<Q> demazure(const RootSystem& rs, const Poly<Q>& f,
                 const std::vector<int>& word, Block block = Block::x);

struct SchubertFamily {
  RingPtr ring;            // rs.pair_ring(); every polynomial lives here
  std::vector<Poly<Q>> r;  // r[w] in the y block, degree = length(w)
  std::vector<Poly<Q>> y_invariants;  // fundamental invariants, y block
  std::vector<int> invariant_degrees;
};

// r[w0] = (sum_j rho_check_j y_j)^l / l!, r[w] = D_{w0 w^{-1}} r[w0] in the
// y block.  Verifies degrees and linear independence modulo the ideal of
// positive-degree invariants before returning.
SchubertFamily schubert_family(const RootSystem& rs);

// Writes f = sum_w g_w r[w] with every g_w a combination of x-monomials
// times invariant monomials in the y block; the solve is exact and runs
// per total degree.  Returns g indexed by group element.
std::vector<Poly<Q>> expand_in_schubert_basis(const RootSystem& rs,
                                              const SchubertFamily& fam,
                                              const Poly<Q>& f);

struct FPackage {
  RingPtr ring;
  SchubertFamily family;
  std::vector<std::vector<Q>> c;  // linear form choices, empty at w0
  Poly<Q> qprime;                 // product of <c_w, y - wx> over w != w0
  std::vector<Poly<Q>> g;         // expansion of qprime
  std::vector<Poly<Q>> g_xx;      // g_w with y := x
  Poly<Q> q;                      // sum_w g_w(x,x) r[w](y)
  Poly<Q> q_at_w0;                // q with y := w0 x
  Poly<Q> coroot_product;         // product of the positive coroots, x block
  Poly<Q> f;                      // q * coroot_product / q_at_w0
};

// Full pipeline.  On return f satisfies: f(x, vx) = 0 for v != w0,
// f(x, w0 x) = coroot_product, and f is nonzero modulo the union-of-graphs
// coinvariant ideal.  Any failure is an internal error.
FPackage construct_F(const RootSystem& rs, int order_bound = 24);

struct BggChainRow {
  int i = 0;
  std::string w_i, v_i;       // canonical word strings
  int y_degree = 0;           // asserted equal to i
  int vanishing_checked = 0;  // elements w with w_i not below w, all zero
};

struct BggChainReport {
  std::vector<int> word;  // reduced word for w0, 0-based letters
  std::vector<BggChainRow> rows;
  std::vector<std::string> gamma;  // gamma_i = w_{i-1}^{-1}(coroot a_i)
  bool top_coefficient_identity = false;
};

// Checks, for Q_i = D_{1 x v_i} q along the given reduced word of w0:
// deg_y Q_i = i, Q_i(x, w_i x) prod_{j>i} gamma_j = (-1)^{r-i} q(x, w0 x),
// and Q_i(x, wx) = 0 whenever w_i is not below w.  Also checks
// g_{w0}(x,x) * coroot_product = (-1)^l q(x, w0 x).  Failures name i and w.
BggChainReport bgg_chain_report(const RootSystem& rs, const FPackage& pkg,
                                const std::vector<int>& word);

}  // namespace weylkit::cox

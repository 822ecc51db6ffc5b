#pragma once

// Graph ideals of Weyl group elements and unions over closed subsets.
// The union of graphs is the intersection of the graph ideals, computed
// by iterated pairwise elimination.

#include <algorithm>
#include <string>
#include <vector>

#include "weylkit/affine.hpp"
#include "weylkit/ideal.hpp"
#include "weylkit/rootsystem.hpp"

namespace weylkit::cox {

using exact::Ideal;
using exact::Poly;

// Substitution images realizing y := w x + mu inside rs.pair_ring();
// mu is given in weight coordinates and may be empty (no translation).
inline std::vector<Poly<Q>> graph_images(const RootSystem& rs, int w,
                                         const std::vector<Q>& mu = {}) {
  const int n = rs.rank();
  const RingPtr& ring = rs.pair_ring();
  const Mat<Q>& P = rs.element(w).pt;
  std::vector<Poly<Q>> images;
  for (int i = 0; i < n; ++i) images.push_back(Poly<Q>::variable(ring, i));
  for (int j = 0; j < n; ++j) {
    Poly<Q> img = Poly<Q>::zero(ring);
    for (int k = 0; k < n; ++k)
      if (P.at(j, k) != 0)
        img += Poly<Q>::variable(ring, k) * P.at(j, k);
    if (!mu.empty() && mu[static_cast<std::size_t>(j)] != 0)
      img += Poly<Q>::constant(ring, mu[static_cast<std::size_t>(j)]);
    images.push_back(img);
  }
  return images;
}

// f(x, wx + mu) for f in the pair ring.
inline Poly<Q> graph_eval(const RootSystem& rs, const Poly<Q>& f, int w,
                          const std::vector<Q>& mu = {}) {
  return f.substitute(rs.pair_ring(), graph_images(rs, w, mu));
}

// Ideal of the graph {(x, wx + mu)}: generated by y_j - (wx + mu)_j.
inline Ideal<Q> graph_ideal(const RootSystem& rs, int w,
                            const std::vector<Q>& mu = {}) {
  const int n = rs.rank();
  const RingPtr& ring = rs.pair_ring();
  std::vector<Poly<Q>> images = graph_images(rs, w, mu);
  std::vector<Poly<Q>> gens;
  for (int j = 0; j < n; ++j)
    gens.push_back(Poly<Q>::variable(ring, n + j) -
                   images[static_cast<std::size_t>(n + j)]);
  return Ideal<Q>(ring, std::move(gens));
}

struct GraphIdealBundle {
  std::vector<int> subset;
  Ideal<Q> i_s;  // intersection of the graph ideals over the subset
  Ideal<Q> j_s;  // i_s + (x_1, ..., x_n)
};

// Intersection of graph ideals over a finite subset, folded in length
// order so early intersections stay small.
inline GraphIdealBundle union_ideal(const RootSystem& rs,
                                    std::vector<int> subset) {
  if (subset.empty()) throw_input("union over the empty subset");
  std::sort(subset.begin(), subset.end(), [&](int a, int b) {
    if (rs.length(a) != rs.length(b)) return rs.length(a) < rs.length(b);
    return a < b;
  });
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());

  Ideal<Q> acc = graph_ideal(rs, subset[0]);
  for (std::size_t k = 1; k < subset.size(); ++k)
    acc = ideal_intersect(acc, graph_ideal(rs, subset[k]));

  const int n = rs.rank();
  std::vector<Poly<Q>> xs;
  for (int i = 0; i < n; ++i)
    xs.push_back(Poly<Q>::variable(rs.pair_ring(), i));
  Ideal<Q> aug(rs.pair_ring(), std::move(xs));

  GraphIdealBundle out;
  out.subset = std::move(subset);
  out.j_s = ideal_sum(acc, aug);
  out.i_s = std::move(acc);
  return out;
}

// Graph ideal of an affine element y = wx + mu.
inline Ideal<Q> graph_ideal(const AffineWeyl& aw, const AffineElement& g) {
  return graph_ideal(aw.finite(), g.w, g.mu);
}

struct AffineGraphBundle {
  std::vector<AffineElement> subset;  // deduplicated, shortest first
  Ideal<Q> i_s;
};

AffineGraphBundle union_ideal(const AffineWeyl& aw,
                              std::vector<AffineElement> subset);

// Refuse subsets that are not lower-closed in Bruhat order; the error
// names the first missing element below a member.
void require_closed(const RootSystem& rs, const std::vector<int>& subset);
void require_closed(const AffineWeyl& aw,
                    const std::vector<AffineElement>& subset);

// Q[y_1..y_n], the coordinate ring of a single fiber of pr_1.
RingPtr fiber_ring(const RootSystem& rs);

// Image of an ideal of the pair ring under x := x0, inside yring.
Ideal<Q> specialize_fiber(const RootSystem& rs, const RingPtr& yring,
                          const Ideal<Q>& I, const std::vector<Q>& x0);

// dim of the localization of Q[y]/I at y0: the stabilized dimension of
// Q[y]/(I + m_{y0}^k).  I must define a finite scheme.
exact::Z local_multiplicity(const RingPtr& yring, const Ideal<Q>& I,
                     const std::vector<Q>& y0, const exact::Z& bound);

struct FiberBlock {
  std::vector<Q> image;  // weight coordinates of the image point
  exact::Z local_dim = 0;       // multiplicity of the fiber at the image
  int members = 0;       // subset elements landing on the image
};

struct FiberReport {
  std::vector<Q> point;
  exact::Z expected = 0;  // subset size
  exact::Z total = 0;     // vector-space dimension of the fiber over the point
  std::vector<FiberBlock> blocks;
  bool flat_at_point = false;  // total == expected
  std::string verdict;         // "PASS" or "FAIL"
};

// Fiber of the union of graphs over x := x0 for an already-intersected
// ideal; the local block dimensions are required to add up to the total.
// No closedness requirement, so degenerate unions can be inspected too.
FiberReport fiber_over_point(const RootSystem& rs, const RingPtr& yring,
                             const Ideal<Q>& i_s,
                             const std::vector<AffineElement>& subset,
                             const std::vector<Q>& x0);

// Scheme-theoretic fiber dimension of the union of graphs over a closed
// subset; refuses non-closed input.
FiberReport fiber_dimension(const RootSystem& rs,
                            const std::vector<int>& subset,
                            const std::vector<Q>& x0);
FiberReport fiber_dimension(const AffineWeyl& aw,
                            const std::vector<AffineElement>& subset,
                            const std::vector<Q>& x0);

struct SampleSpec {
  int max_denominator = 4;  // grid denominators 1..max_denominator
  Q box_max = Q(2);         // sample box [0, box_max]^n
  int random_count = 20;    // certified-generic extra samples
  unsigned long seed = 20260819;
};

struct FlatnessSample {
  std::vector<Q> point;
  bool generic = false;  // certified trivial affine stabilizer
  exact::Z total = 0;
  int blocks = 0;
  std::string verdict;
};

struct FlatnessReport {
  std::string group;
  std::vector<std::string> subset_words;
  exact::Z expected = 0;
  int grid_points = 0;
  int random_points = 0;
  int failures = 0;
  std::vector<FlatnessSample> samples;
  bool flat = false;
};

// Sweeps fibers of the union of graphs over a denominator-bounded grid in
// the sample box plus certified-generic random points; every fiber of a
// closed subset must have dimension |subset|.
FlatnessReport flatness_report(const AffineWeyl& aw,
                               const std::vector<AffineElement>& subset,
                               const SampleSpec& spec = {});
FlatnessReport flatness_report(const RootSystem& rs,
                               const std::vector<int>& subset,
                               const SampleSpec& spec = {});

struct BorelProductReport {
  std::string label;
  long group_order = 0;
  bool hilbert_series_matches = false;  // HS(pair/I_W) == W(t)/(1-t)^n
  exact::Z coinvariant_dim = 0;                // dim pair/J_W == |W|
  int closed_subsets_checked = 0;
  bool subset_dims_match = false;   // dim pair/J_S == |S| for all closed S
  bool subset_bases_match = false;  // divided differences of F give bases
};

// Full self-check of the product structure on the union-of-graphs
// coinvariants: Hilbert series of the total union, dimension of every
// closed-subset quotient, and the divided-difference basis selected by
// u w0 membership.  Any failure is an internal error.
BorelProductReport verify_borel_product(const RootSystem& rs);

struct CoarseFiber {
  std::vector<Q> x;
  Lattice lattice = Lattice::weight;
  IntegralWeylData integral;
  std::vector<Poly<Q>> invariants;  // fundamental invariants of W_[x]
  std::vector<int> invariant_degrees;
  exact::Z fiber_dim = 0;       // dim of the coinvariant ring of W_[x]
  long coset_count = 0;  // |W| / |W_[x]|
  long group_order = 0;
};

// Fiber data of the coarse quotient map through the point x: the integral
// Weyl group, its coinvariant ring, and the count of cosets hitting the
// same fiber.  coset_count * fiber_dim == |W| is enforced.
CoarseFiber coarse_fiber(const RootSystem& rs, Lattice lattice,
                         const std::vector<Q>& x);

}  // namespace weylkit::cox

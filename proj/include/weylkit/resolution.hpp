#pragma once

// Graded presentations of modules over a polynomial ring, free resolutions
// by iterated syzygies, and module Hilbert series via leading-term staircases.

#include <optional>
#include <vector>

#include "weylkit/ideal.hpp"
#include "weylkit/modgb.hpp"

namespace weylkit::exact {

// degree of a homogeneous module element w.r.t. generator twists; nullopt for 0
template <class K>
std::optional<int> homogeneous_degree(const MVec<K>& v,
                                      const std::vector<int>& twists) {
  std::optional<int> deg;
  for (int i = 0; i < v.rank(); ++i) {
    const auto& p = v.c[static_cast<std::size_t>(i)];
    if (p.is_zero()) continue;
    for (const auto& t : p.terms()) {
      int d = t.m.deg + twists[static_cast<std::size_t>(i)];
      if (!deg)
        deg = d;
      else
        WK_ASSERT(*deg == d, "inhomogeneous module element");
    }
  }
  return deg;
}

template <class K>
struct ModulePresentation {
  RingPtr ring;
  std::vector<int> gen_degrees;
  std::vector<MVec<K>> relations;  // each of rank gen_degrees.size()

  int rank() const { return static_cast<int>(gen_degrees.size()); }
  void check() const {
    for (const auto& r : relations) {
      WK_ASSERT(r.rank() == rank(), "relation rank mismatch");
      homogeneous_degree(r, gen_degrees);
    }
  }
};

template <class K>
struct FreeResolution {
  RingPtr ring;
  // twists[0] = generator degrees of F0; twists[i] = degrees of F_i
  std::vector<std::vector<int>> twists;
  // maps[i]: columns of the map F_{i+1} -> F_i (so maps.size() = length)
  std::vector<std::vector<MVec<K>>> maps;
  bool complete = false;  // reached the zero module within max_steps
};

// Resolve by iterated syzygies.  Over a polynomial ring this terminates
// within #variables steps past the presentation; max_steps exists for
// callers that resolve over quotient rings by including the defining ideal
// in the relations, where minimal resolutions can be infinite.
template <class K>
FreeResolution<K> free_resolution(const ModulePresentation<K>& pres,
                                  int max_steps) {
  pres.check();
  FreeResolution<K> res;
  res.ring = pres.ring;
  res.twists.push_back(pres.gen_degrees);
  ModOrder ord{pres.ring.get(), {}};
  std::vector<MVec<K>> cols;
  for (const auto& r : pres.relations)
    if (!r.is_zero()) cols.push_back(r);
  while (!cols.empty()) {
    std::vector<int> degs;
    degs.reserve(cols.size());
    for (const auto& v : cols)
      degs.push_back(homogeneous_degree(v, res.twists.back()).value());
    res.maps.push_back(cols);
    res.twists.push_back(std::move(degs));
    if (static_cast<int>(res.maps.size()) >= max_steps) return res;
    cols = syzygies(pres.ring, ord, res.maps.back());
  }
  res.complete = true;
  return res;
}

// evaluate the columns at a point: matrix of scalars, rows = ambient rank
template <class K>
Mat<K> evaluate_map(const std::vector<MVec<K>>& cols,
                    const std::vector<K>& point, int ambient_rank) {
  Mat<K> m(ambient_rank, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < ambient_rank; ++i)
      m.at(i, static_cast<int>(j)) =
          cols[j].c[static_cast<std::size_t>(i)].evaluate(point);
  return m;
}

// Hilbert series of coker(relations) graded by gen_degrees: the staircase of
// the leading submodule, component by component.
template <class K>
HilbertSeries module_hilbert(const ModulePresentation<K>& pres) {
  pres.check();
  ModOrder ord{pres.ring.get(), {}};
  ModuleGB<K> gb = module_groebner(pres.ring, ord, pres.relations);
  UPoly<Q> num;
  for (int comp = 0; comp < pres.rank(); ++comp) {
    std::vector<Mono> lms;
    for (const auto& g : gb.gens) {
      ModLead<K> lt = mvec_lead(ord, g);
      if (lt.comp == comp) lms.push_back(lt.m);
    }
    num = num + UPoly<Q>::monomial(Q(1),
                                   pres.gen_degrees[static_cast<std::size_t>(comp)]) *
                    monomial_hilbert_numerator(std::move(lms));
  }
  return HilbertSeries{std::move(num), pres.ring->n};
}

}  // namespace weylkit::exact

#include "weylkit/graphs.hpp"

#include <atomic>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "weylkit/demazure.hpp"
#include "weylkit/error.hpp"
#include "weylkit/invariants.hpp"

namespace weylkit::cox {

using exact::Ideal;
using exact::Mat;
using exact::Mono;
using exact::Poly;
using exact::Term;
using exact::Z;

namespace {

std::vector<AffineElement> as_affine(const RootSystem& rs,
                                     const std::vector<int>& subset) {
  std::vector<AffineElement> out;
  std::vector<Q> zero(static_cast<std::size_t>(rs.rank()), Q(0));
  for (int w : subset) out.push_back(AffineElement{zero, w});
  return out;
}

std::string point_str(const std::vector<Q>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

long q_floor_long(const Q& q) {
  Z f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  WK_ASSERT(f.fits_slong_p(), "floor out of range");
  return f.get_si();
}

// common sweep over the grid and the certified-generic random points;
// the fibers are independent, so they run as parallel tasks and the
// report aggregates them in sample order
FlatnessReport sweep_fibers(const RootSystem& rs, std::string group,
                            std::vector<std::string> words,
                            const std::vector<AffineElement>& subset,
                            const Ideal<Q>& i_s, const SampleSpec& spec) {
  if (spec.max_denominator < 1) throw_input("grid denominator bound below 1");
  if (spec.box_max <= 0) throw_input("sample box is empty");
  const int n = rs.rank();
  FlatnessReport rep;
  rep.group = std::move(group);
  rep.subset_words = std::move(words);
  rep.expected = Z(static_cast<long>(subset.size()));
  RingPtr yring = fiber_ring(rs);

  struct SamplePoint {
    std::vector<Q> pt;
    bool generic = false;
  };
  std::vector<SamplePoint> pts;

  std::set<std::string> seen;
  for (int d = 1; d <= spec.max_denominator; ++d) {
    long nmax = q_floor_long(spec.box_max * d);
    std::vector<long> k(static_cast<std::size_t>(n), 0);
    while (true) {
      std::vector<Q> pt;
      std::string key;
      for (int i = 0; i < n; ++i) {
        pt.push_back(Q(k[static_cast<std::size_t>(i)]) / Q(d));
        key += pt.back().get_str() + ",";
      }
      if (seen.insert(key).second) {
        pts.push_back(SamplePoint{std::move(pt), false});
        ++rep.grid_points;
      }
      int i = 0;
      while (i < n) {
        if (++k[static_cast<std::size_t>(i)] <= nmax) break;
        k[static_cast<std::size_t>(i)] = 0;
        ++i;
      }
      if (i == n) break;
    }
  }

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> den(spec.max_denominator + 1,
                                         3 * spec.max_denominator + 1);
  int attempts = 0;
  for (int found = 0; found < spec.random_count; ++found) {
    while (true) {
      if (++attempts > 200 * spec.random_count + 200)
        throw_internal("could not sample enough generic points");
      std::vector<Q> pt;
      for (int i = 0; i < n; ++i) {
        int d = den(rng);
        std::uniform_int_distribution<long> num(0,
                                                q_floor_long(spec.box_max * d));
        pt.push_back(Q(num(rng)) / Q(d));
      }
      if (!has_trivial_stabilizer(rs, Lattice::root, pt)) continue;
      pts.push_back(SamplePoint{std::move(pt), true});
      ++rep.random_points;
      break;
    }
  }

  std::vector<std::optional<FiberReport>> results(pts.size());
  std::vector<std::exception_ptr> errors(pts.size());
  std::atomic<std::size_t> cursor{0};
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, 8);
  workers = std::min<std::size_t>(workers, pts.size());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = cursor.fetch_add(1)) < pts.size();) {
        try {
          results[i] = fiber_over_point(rs, yring, i_s, subset, pts[i].pt);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    const FiberReport& fr = *results[i];
    if (pts[i].generic && fr.blocks.size() != subset.size())
      throw_internal("certified generic point " + point_str(pts[i].pt) +
                     " failed to separate the graphs");
    FlatnessSample s;
    s.point = pts[i].pt;
    s.generic = pts[i].generic;
    s.total = fr.total;
    s.blocks = static_cast<int>(fr.blocks.size());
    s.verdict = fr.verdict;
    if (!fr.flat_at_point) ++rep.failures;
    rep.samples.push_back(std::move(s));
  }
  rep.flat = (rep.failures == 0);
  return rep;
}

}  // namespace

AffineGraphBundle union_ideal(const AffineWeyl& aw,
                              std::vector<AffineElement> subset) {
  if (subset.empty()) throw_input("union over the empty subset");
  std::vector<AffineElement> uniq;
  for (const AffineElement& g : subset)
    if (std::find(uniq.begin(), uniq.end(), g) == uniq.end())
      uniq.push_back(g);
  std::stable_sort(uniq.begin(), uniq.end(),
                   [&](const AffineElement& a, const AffineElement& b) {
                     return aw.length(a) < aw.length(b);
                   });
  Ideal<Q> acc = graph_ideal(aw, uniq[0]);
  for (std::size_t k = 1; k < uniq.size(); ++k)
    acc = ideal_intersect(acc, graph_ideal(aw, uniq[k]));
  return AffineGraphBundle{std::move(uniq), std::move(acc)};
}

void require_closed(const RootSystem& rs, const std::vector<int>& subset) {
  std::set<int> in(subset.begin(), subset.end());
  for (int g : subset)
    for (int u : rs.lower_interval(g))
      if (!in.count(u))
        throw_input("subset is not closed: " + rs.word_str(u) +
                    " lies below " + rs.word_str(g) + " and is missing");
}

void require_closed(const AffineWeyl& aw,
                    const std::vector<AffineElement>& subset) {
  for (const AffineElement& g : subset)
    for (const AffineElement& u : aw.lower_interval(g))
      if (std::find(subset.begin(), subset.end(), u) == subset.end())
        throw_input("subset is not closed: " + word_str(aw, u) +
                    " lies below " + word_str(aw, g) + " and is missing");
}

RingPtr fiber_ring(const RootSystem& rs) {
  std::vector<std::string> names;
  for (int j = 0; j < rs.rank(); ++j)
    names.push_back(rs.pair_ring()->names[static_cast<std::size_t>(
        rs.rank() + j)]);
  return exact::make_ring(std::move(names));
}

Ideal<Q> specialize_fiber(const RootSystem& rs, const RingPtr& yring,
                          const Ideal<Q>& I, const std::vector<Q>& x0) {
  const int n = rs.rank();
  if (static_cast<int>(x0.size()) != n)
    throw_input("point dimension differs from the rank");
  WK_ASSERT(I.ring() == rs.pair_ring(), "ideal outside the pair ring");
  std::vector<Poly<Q>> images;
  for (int i = 0; i < n; ++i)
    images.push_back(Poly<Q>::constant(yring, x0[static_cast<std::size_t>(i)]));
  for (int j = 0; j < n; ++j) images.push_back(Poly<Q>::variable(yring, j));
  std::vector<Poly<Q>> gens;
  for (const Poly<Q>& f : I.gens()) {
    Poly<Q> g = f.substitute(yring, images);
    if (!g.is_zero()) gens.push_back(std::move(g));
  }
  return Ideal<Q>(yring, std::move(gens));
}

Z local_multiplicity(const RingPtr& yring, const Ideal<Q>& I,
                     const std::vector<Q>& y0, const Z& bound) {
  const int n = yring->n;
  WK_ASSERT(static_cast<int>(y0.size()) == n, "point dimension mismatch");
  std::vector<Poly<Q>> linear;
  for (int j = 0; j < n; ++j)
    linear.push_back(Poly<Q>::variable(yring, j) -
                     Poly<Q>::constant(yring, y0[static_cast<std::size_t>(j)]));
  Z prev(-1);
  for (int k = 1;; ++k) {
    std::vector<Poly<Q>> gens = I.gens();
    for (const Mono& m : monomials_of_degree(yring, k)) {
      Poly<Q> p = Poly<Q>::constant(yring, Q(1));
      for (int j = 0; j < n; ++j)
        for (int t = 0; t < m.e[static_cast<std::size_t>(j)]; ++t)
          p = p * linear[static_cast<std::size_t>(j)];
      gens.push_back(std::move(p));
    }
    auto d = quotient_dim(Ideal<Q>(yring, std::move(gens)));
    if (!d) throw_internal("local multiplicity of an infinite quotient");
    if (*d == prev) return prev;
    prev = *d;
    if (Z(k) > bound + 2)
      throw_internal("local multiplicity failed to stabilize");
  }
}

FiberReport fiber_over_point(const RootSystem& rs, const RingPtr& yring,
                             const Ideal<Q>& i_s,
                             const std::vector<AffineElement>& subset,
                             const std::vector<Q>& x0) {
  FiberReport rep;
  rep.point = x0;
  rep.expected = Z(static_cast<long>(subset.size()));
  Ideal<Q> fib = specialize_fiber(rs, yring, i_s, x0);
  auto total = quotient_dim(fib);
  if (!total) throw_internal("union-of-graphs fiber has infinite dimension");
  rep.total = *total;
  OrbitBlocks orbits = orbit_decomposition(rs, subset, x0);
  Z sum(0);
  for (std::size_t b = 0; b < orbits.images.size(); ++b) {
    FiberBlock blk;
    blk.image = orbits.images[b];
    blk.members = static_cast<int>(orbits.blocks[b].size());
    blk.local_dim = local_multiplicity(yring, fib, blk.image, rep.total);
    sum += blk.local_dim;
    rep.blocks.push_back(std::move(blk));
  }
  if (sum != rep.total)
    throw_internal("local multiplicities do not sum to the fiber dimension "
                   "over " + point_str(x0));
  rep.flat_at_point = (rep.total == rep.expected);
  rep.verdict = rep.flat_at_point ? "PASS" : "FAIL";
  return rep;
}

FiberReport fiber_dimension(const RootSystem& rs,
                            const std::vector<int>& subset,
                            const std::vector<Q>& x0) {
  if (subset.empty()) throw_input("fiber over the empty subset");
  require_closed(rs, subset);
  GraphIdealBundle bundle = union_ideal(rs, subset);
  return fiber_over_point(rs, fiber_ring(rs), bundle.i_s,
                          as_affine(rs, bundle.subset), x0);
}

FiberReport fiber_dimension(const AffineWeyl& aw,
                            const std::vector<AffineElement>& subset,
                            const std::vector<Q>& x0) {
  if (subset.empty()) throw_input("fiber over the empty subset");
  require_closed(aw, subset);
  AffineGraphBundle bundle = union_ideal(aw, subset);
  return fiber_over_point(aw.finite(), fiber_ring(aw.finite()), bundle.i_s,
                          bundle.subset, x0);
}

FlatnessReport flatness_report(const AffineWeyl& aw,
                               const std::vector<AffineElement>& subset,
                               const SampleSpec& spec) {
  require_closed(aw, subset);
  AffineGraphBundle bundle = union_ideal(aw, subset);
  std::vector<std::string> words;
  for (const AffineElement& g : bundle.subset)
    words.push_back(word_str(aw, g));
  return sweep_fibers(aw.finite(), aw.label(), std::move(words),
                      bundle.subset, bundle.i_s, spec);
}

FlatnessReport flatness_report(const RootSystem& rs,
                               const std::vector<int>& subset,
                               const SampleSpec& spec) {
  require_closed(rs, subset);
  GraphIdealBundle bundle = union_ideal(rs, subset);
  std::vector<std::string> words;
  for (int w : bundle.subset) words.push_back(rs.word_str(w));
  return sweep_fibers(rs, rs.label(), std::move(words),
                      as_affine(rs, bundle.subset), bundle.i_s, spec);
}

BorelProductReport verify_borel_product(const RootSystem& rs) {
  BorelProductReport rep;
  rep.label = rs.label();
  rep.group_order = rs.order();

  std::vector<int> all(static_cast<std::size_t>(rs.order()));
  std::iota(all.begin(), all.end(), 0);
  GraphIdealBundle full = union_ideal(rs, all);

  exact::HilbertSeries hs = quotient_hilbert(full.i_s);
  exact::HilbertSeries expect{rs.poincare(), rs.rank()};
  if (!(hs == expect))
    throw_internal("union-of-graphs Hilbert series differs from W(t)/(1-t)^n "
                   "for " + rep.label);
  rep.hilbert_series_matches = true;

  auto dim = quotient_dim(full.j_s);
  if (!dim || *dim != Z(rep.group_order))
    throw_internal("coinvariant dimension differs from the group order for " +
                   rep.label);
  rep.coinvariant_dim = *dim;

  FPackage pkg = construct_F(rs);
  auto cmp = [&](const Mono& a, const Mono& b) {
    return exact::mono_cmp(*rs.pair_ring(), a, b) > 0;
  };
  for (const std::vector<int>& z : rs.closed_subsets()) {
    if (z.empty()) continue;
    GraphIdealBundle bundle =
        (z.size() == all.size()) ? full : union_ideal(rs, z);
    auto zdim = quotient_dim(bundle.j_s);
    if (!zdim || *zdim != Z(static_cast<long>(z.size())))
      throw_internal("quotient dimension differs from the subset size for " +
                     rep.label);

    // with graphs oriented y = wx, D_{1 x u}F carries the class labeled
    // u w0: labels inside z must give a basis, labels outside must vanish
    std::vector<Poly<Q>> nfs;
    for (int u = 0; u < rs.order(); ++u) {
      int m = rs.mult(u, rs.w0());
      Poly<Q> nf = bundle.j_s.reduce(
          demazure(rs, pkg.f, rs.element(u).word, Block::y));
      if (std::find(z.begin(), z.end(), m) == z.end()) {
        if (!nf.is_zero())
          throw_internal("class labeled outside the subset fails to vanish "
                         "(label " + rs.word_str(m) + ")");
      } else {
        nfs.push_back(std::move(nf));
      }
    }
    WK_ASSERT(nfs.size() == z.size(), "label count mismatch");
    std::map<Mono, int, decltype(cmp)> row(cmp);
    for (const Poly<Q>& f : nfs)
      for (const Term<Q>& t : f.terms()) row.emplace(t.m, 0);
    int next = 0;
    for (auto& kv : row) kv.second = next++;
    Mat<Q> a(next, static_cast<int>(nfs.size()));
    for (std::size_t k = 0; k < nfs.size(); ++k)
      for (const Term<Q>& t : nfs[k].terms())
        a.at(row.at(t.m), static_cast<int>(k)) = t.c;
    if (exact::rank_of(a) != static_cast<int>(nfs.size()))
      throw_internal("selected classes are dependent on a closed subset of " +
                     rep.label);
    ++rep.closed_subsets_checked;
  }
  rep.subset_dims_match = true;
  rep.subset_bases_match = true;
  return rep;
}

CoarseFiber coarse_fiber(const RootSystem& rs, Lattice lattice,
                         const std::vector<Q>& x) {
  CoarseFiber out;
  out.x = x;
  out.lattice = lattice;
  out.group_order = rs.order();
  out.integral = integral_weyl(rs, lattice, x);

  exact::MatrixGroup<Q> g;
  for (int w : out.integral.w_bracket) {
    g.elements.push_back(rs.element(w).var);
    g.words.push_back(rs.element(w).word);
  }
  // w_bracket is sorted, so the identity sits first as required
  exact::FundamentalInvariants<Q> inv =
      fundamental_invariants(rs.poly_ring(), g);
  out.invariants = inv.polys;
  out.invariant_degrees = inv.degrees;

  auto d = quotient_dim(Ideal<Q>(rs.poly_ring(), inv.polys));
  if (!d)
    throw_internal("coinvariant ring of the integral Weyl group is infinite");
  out.fiber_dim = *d;

  long sub = static_cast<long>(out.integral.w_bracket.size());
  if (out.group_order % sub != 0)
    throw_internal("integral Weyl group order does not divide the group "
                   "order");
  out.coset_count = out.group_order / sub;
  if (Z(out.coset_count) * out.fiber_dim != Z(out.group_order))
    throw_internal("coset count times fiber dimension misses the group "
                   "order at " + point_str(x));
  return out;
}

}  // namespace weylkit::cox

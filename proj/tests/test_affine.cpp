#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "weylkit/affine.hpp"
#include "weylkit/error.hpp"

using namespace weylkit;
using namespace weylkit::exact;
using namespace weylkit::cox;

namespace {

std::vector<Q> qvec(std::initializer_list<long> nums, long den = 1) {
  std::vector<Q> v;
  for (long n : nums) v.push_back(Q(n) / Q(den));
  return v;
}

Q qq(long n, long d) { return Q(n) / Q(d); }

std::string key_of(const AffineElement& g) {
  std::string k = std::to_string(g.w);
  for (const auto& q : g.mu) k += "|" + q_str(q);
  return k;
}

}  // namespace

TEST_CASE("composition and action arithmetic") {
  AffineWeyl aw = AffineWeyl::build("A1~", 8);
  const RootSystem& rs = aw.finite();

  AffineElement id = aw.identity();
  CHECK(aw.act(id, {qq(3, 7)}) == std::vector<Q>{qq(3, 7)});

  // pure translation
  AffineElement tau{qvec({2}), 0};
  CHECK(aw.act(tau, {qq(1, 3)}) == std::vector<Q>{qq(7, 3)});

  // (tau_2, s) fixes the point 1
  AffineElement s0{qvec({2}), rs.element_by_word({0})};
  CHECK(aw.act(s0, {Q(1)}) == std::vector<Q>{Q(1)});
  CHECK(aw.simple(0) == s0);

  // composition law against pointwise application, across both types
  std::mt19937_64 rng(20260819);
  for (const char* label : {"A1~", "A2~"}) {
    AffineWeyl w = AffineWeyl::build(label, 6);
    int count = w.enumerated_count();
    std::uniform_int_distribution<int> pick(0, count - 1);
    std::uniform_int_distribution<long> num(-6, 6);
    for (int trial = 0; trial < 25; ++trial) {
      AffineElement a = w.enumerated(pick(rng));
      AffineElement b = w.enumerated(pick(rng));
      std::vector<Q> x;
      for (int i = 0; i < w.finite().rank(); ++i) x.push_back(Q(num(rng)) / Q(7));
      CHECK(w.act(w.mult(a, b), x) == w.act(a, w.act(b, x)));
      CHECK(w.mult(a, w.inverse(a)) == w.identity());
      CHECK(w.mult(w.inverse(a), a) == w.identity());
    }
  }
}

TEST_CASE("affine generators and the enumeration table") {
  AffineWeyl a1 = AffineWeyl::build("A1~", 9);
  // s0 reflects in the wall <x, alpha_vee> = 1
  CHECK(a1.act(a1.simple(0), {qq(1, 5)}) == std::vector<Q>{qq(9, 5)});
  CHECK(a1.act(a1.simple(1), {qq(1, 5)}) == std::vector<Q>{qq(-1, 5)});
  CHECK(a1.length(a1.simple(0)) == 1);

  // infinite dihedral group: two elements in every positive length
  std::map<int, int> tally;
  for (int i = 0; i < a1.enumerated_count(); ++i)
    tally[a1.length(a1.enumerated(i))] += 1;
  CHECK(tally[0] == 1);
  for (int m = 1; m <= 9; ++m) CHECK(tally[m] == 2);

  AffineWeyl a2 = AffineWeyl::build("A2~", 8);
  CHECK(a2.highest_root() == qvec({1, 1}));
  CHECK(a2.s_theta() == a2.finite().element_by_word({0, 1, 0}));
  // ball sizes from the Poincare series W(t)/((1-t)(1-t^2)): the length-m
  // slice has 3m elements
  std::map<int, int> tally2;
  for (int i = 0; i < a2.enumerated_count(); ++i)
    tally2[a2.length(a2.enumerated(i))] += 1;
  CHECK(tally2[0] == 1);
  for (int m = 1; m <= 8; ++m) CHECK(tally2[m] == 3 * m);

  // canonical words are reduced and reproduce their elements
  for (int i = 0; i < a2.enumerated_count(); ++i) {
    const AffineElement& g = a2.enumerated(i);
    CHECK(static_cast<int>(a2.word(g).size()) == a2.length(g));
    CHECK(a2.element_by_word(a2.word(g)) == g);
  }

  CHECK_THROWS_AS(AffineWeyl::build("A1", 5), Error);
  CHECK_THROWS_AS(AffineWeyl::build("Z9~", 5), Error);
  AffineElement far{qvec({40}), 0};
  CHECK_THROWS_AS(a1.length(far), Error);
}

TEST_CASE("tabulated, formula, and alcove-separation lengths agree") {
  for (const char* label : {"A1~", "A2~"}) {
    AffineWeyl aw = AffineWeyl::build(label, 6);
    for (int i = 0; i < aw.enumerated_count(); ++i) {
      const AffineElement& g = aw.enumerated(i);
      int l = aw.length(g);
      CHECK(aw.length_formula(g) == l);
      CHECK(aw.alcove_separation_length(g) == l);
    }
  }
}

TEST_CASE("affine Bruhat order and lower intervals") {
  AffineWeyl a1 = AffineWeyl::build("A1~", 8);
  CHECK(a1.lower_interval(a1.identity()).size() == 1);
  CHECK(a1.lower_interval(a1.simple(0)).size() == 2);

  // in the infinite dihedral group every element of smaller length is a
  // subword: the interval below s0 s1 s0 holds e, both reflections, both
  // length-two elements, and the top, six in total
  AffineElement g = a1.element_by_word({0, 1, 0});
  std::vector<AffineElement> low = a1.lower_interval(g);
  CHECK(low.size() == 6);
  AffineElement s1s0 = a1.element_by_word({1, 0});
  CHECK(a1.bruhat_leq(s1s0, g));
  CHECK(a1.is_closed(low));
  CHECK_FALSE(a1.is_closed({a1.identity(), a1.element_by_word({0, 1})}));

  // brute-force subword oracle on the other type
  AffineWeyl a2 = AffineWeyl::build("A2~", 6);
  for (int i = 0; i < a2.enumerated_count(); ++i) {
    const AffineElement& b = a2.enumerated(i);
    if (a2.length(b) > 4) continue;
    const std::vector<int>& w = a2.word(b);
    std::set<std::string> keys;
    for (unsigned mask = 0; mask < (1u << w.size()); ++mask) {
      std::vector<int> sub;
      for (std::size_t j = 0; j < w.size(); ++j)
        if (mask & (1u << j)) sub.push_back(w[j]);
      keys.insert(key_of(a2.element_by_word(sub)));
    }
    std::vector<AffineElement> low2 = a2.lower_interval(b);
    CHECK(low2.size() == keys.size());
    for (const auto& h : low2) CHECK(keys.count(key_of(h)) == 1);
    CHECK(a2.is_closed(low2));
  }
}

TEST_CASE("integral Weyl groups: rank-one and rank-two hand values") {
  RootSystem a1 = RootSystem::build("A1", Lattice::root);
  CHECK(has_trivial_stabilizer(a1, Lattice::root, {qq(1, 2)}));

  IntegralWeylData at1 = integral_weyl(a1, Lattice::root, {Q(1)});
  CHECK((at1.w_bracket == std::vector<int>{0, 1}));
  CHECK(at1.lift[1] == qvec({2}));
  CHECK(at1.four_way_checked);
  REQUIRE(at1.generators.size() == 1);
  CHECK((at1.generators[0] == AffineElement{qvec({2}), 1}));

  IntegralWeylData at0 = integral_weyl(a1, Lattice::root, {Q(0)});
  CHECK(static_cast<int>(at0.w_bracket.size()) == a1.order());

  // weight lattice: wx - x can land in Lambda without any integral root
  IntegralWeylData wt = integral_weyl(a1, Lattice::weight, {qq(1, 2)});
  CHECK((wt.w_bracket == std::vector<int>{0, 1}));
  CHECK(wt.lift[1] == qvec({1}));
  CHECK(wt.phi_bracket.empty());
  CHECK(wt.reflection_subgroup == std::vector<int>{0});
  CHECK_FALSE(wt.four_way_checked);

  RootSystem a2 = RootSystem::build("A2", Lattice::root);
  // direct pairing check for each of the six elements at a generic point
  const std::vector<Q> generic{qq(1, 5), qq(1, 7)};
  for (int w = 1; w < a2.order(); ++w) {
    std::vector<Q> diff = a2.element(w).pt.apply(generic);
    for (int i = 0; i < 2; ++i)
      diff[static_cast<std::size_t>(i)] -= generic[static_cast<std::size_t>(i)];
    CHECK_FALSE(a2.lattice_contains(diff));
  }
  CHECK(has_trivial_stabilizer(a2, Lattice::root, generic));

  IntegralWeylData half = integral_weyl(a2, Lattice::root, {qq(1, 2), Q(0)});
  int s2 = a2.element_by_word({1});
  CHECK((half.w_bracket == std::vector<int>{0, s2}));
  CHECK(half.phi_bracket.size() == 1);
  CHECK(a2.positive_coroots()[static_cast<std::size_t>(half.phi_bracket[0])] ==
        qvec({0, 1}));
  CHECK(half.lift[1] == qvec({0, 0}));

  for (const AffineElement& g : stabilizer_elements(a2, half)) {
    std::vector<Q> y = a2.element(g.w).pt.apply(half.x);
    for (int i = 0; i < 2; ++i) y[static_cast<std::size_t>(i)] += g.mu[static_cast<std::size_t>(i)];
    CHECK(y == half.x);
  }
}

TEST_CASE("equivalent stabilizer descriptions on random and box points") {
  std::mt19937_64 rng(20260819);
  for (const char* label : {"A1", "A2", "B2"}) {
    RootSystem rs = RootSystem::build(label, Lattice::root);
    int n = rs.rank();

    // rho shift: s omega_j - omega_j stays in the root lattice
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Q> e(static_cast<std::size_t>(n), Q(0));
        e[static_cast<std::size_t>(j)] = Q(1);
        std::vector<Q> diff = rs.simple_pt(i).apply(e);
        diff[static_cast<std::size_t>(j)] -= Q(1);
        CHECK(rs.lattice_contains(diff));
      }

    std::uniform_int_distribution<long> num(-8, 8);
    std::uniform_int_distribution<long> den(1, 8);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Q> x;
      for (int i = 0; i < n; ++i) x.push_back(Q(num(rng)) / Q(den(rng)));
      // the constructor compares all four descriptions and throws on any
      // disagreement
      IntegralWeylData data = integral_weyl(rs, Lattice::root, x);
      CHECK(data.four_way_checked);
      CHECK(data.w_bracket.front() == 0);
      CHECK(std::is_sorted(data.w_bracket.begin(), data.w_bracket.end()));
    }

    // all special points with denominators up to 4 in the fundamental box
    std::set<Q> fractions;
    for (long b = 1; b <= 4; ++b)
      for (long a = 0; a <= b; ++a) fractions.insert(Q(a, b));
    std::vector<Q> grid(fractions.begin(), fractions.end());
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      std::vector<Q> x;
      for (int i = 0; i < n; ++i) x.push_back(grid[idx[static_cast<std::size_t>(i)]]);
      IntegralWeylData data = integral_weyl(rs, Lattice::root, x);
      CHECK(data.four_way_checked);
      int carry = 0;
      for (carry = 0; carry < n; ++carry) {
        if (++idx[static_cast<std::size_t>(carry)] < grid.size()) break;
        idx[static_cast<std::size_t>(carry)] = 0;
      }
      if (carry == n) break;
    }
  }
}

TEST_CASE("orbit decomposition groups elements by image point") {
  RootSystem a1 = RootSystem::build("A1", Lattice::root);
  AffineElement e{qvec({0}), 0};
  AffineElement s0{qvec({2}), 1};

  OrbitBlocks at1 = orbit_decomposition(a1, {e, s0}, {Q(1)});
  CHECK(at1.images == std::vector<std::vector<Q>>{{Q(1)}});
  CHECK((at1.blocks == std::vector<std::vector<int>>{{0, 1}}));

  OrbitBlocks half = orbit_decomposition(a1, {e, s0}, {qq(1, 2)});
  CHECK((half.images ==
         std::vector<std::vector<Q>>{{qq(1, 2)}, {qq(3, 2)}}));
  CHECK((half.blocks == std::vector<std::vector<int>>{{0}, {1}}));

  // block sizes always sum to the subset size
  AffineWeyl a2 = AffineWeyl::build("A2~", 4);
  std::vector<AffineElement> subset;
  for (int i = 0; i < a2.enumerated_count(); ++i)
    subset.push_back(a2.enumerated(i));
  OrbitBlocks blocks =
      orbit_decomposition(a2.finite(), subset, {qq(1, 2), Q(0)});
  std::size_t total = 0;
  for (const auto& b : blocks.blocks) total += b.size();
  CHECK(total == subset.size());
}

TEST_CASE("length-zero elements of the extended group") {
  AffineWeyl a1 = AffineWeyl::build("A1~", 6);
  std::vector<AffineElement> omega1 = omega_elements(a1);
  REQUIRE(omega1.size() == 2);
  CHECK(omega1[0] == a1.identity());
  CHECK((omega1[1] == AffineElement{qvec({1}), 1}));
  // the nontrivial element folds the alcove onto itself: x -> 1 - x
  CHECK(a1.act(omega1[1], {qq(1, 5)}) == std::vector<Q>{qq(4, 5)});
  CHECK(a1.length_formula(omega1[1]) == 0);

  AffineWeyl a2 = AffineWeyl::build("A2~", 6);
  std::vector<AffineElement> omega2 = omega_elements(a2);
  REQUIRE(omega2.size() == 3);
  for (const auto& g : omega2) CHECK(a2.length_formula(g) == 0);
  // the two nontrivial elements are mutually inverse rotations of order 3
  AffineElement r = omega2[1];
  AffineElement r3 = a2.mult(r, a2.mult(r, r));
  CHECK(r3 == a2.identity());
  CHECK(a2.mult(omega2[1], omega2[2]) == a2.identity());
}

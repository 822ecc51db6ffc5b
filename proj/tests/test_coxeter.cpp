#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "weylkit/rootsystem.hpp"

using namespace weylkit;
using namespace weylkit::cox;

namespace {

int braid_order(int cij_cji) {
  switch (cij_cji) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
  }
  FAIL("off-diagonal Cartan product out of range");
  return 0;
}

// lower Bruhat interval as subword products of the fixed reduced word
std::set<int> subword_closure(const RootSystem& rs, int w) {
  std::set<int> L{0};
  for (int s : rs.element(w).word) {
    std::set<int> next = L;
    for (int u : L) next.insert(rs.mult_simple(u, s));
    L = std::move(next);
  }
  return L;
}

}  // namespace

TEST_CASE("orders and root counts of the supported labels") {
  struct Row {
    const char* label;
    int order, posroots;
  };
  for (Row row : std::initializer_list<Row>{{"A1", 2, 1},
                                            {"A2", 6, 3},
                                            {"A3", 24, 6},
                                            {"B2", 8, 4},
                                            {"C2", 8, 4},
                                            {"G2", 12, 6}}) {
    RootSystem rs = RootSystem::build(row.label);
    CHECK(rs.order() == row.order);
    CHECK(static_cast<int>(rs.positive_roots().size()) == row.posroots);
    CHECK(rs.length(rs.w0()) == row.posroots);
  }
  CHECK_THROWS_AS(RootSystem::build("H3"), Error);
  CHECK_THROWS_AS(RootSystem::build("A1~"), Error);
}

TEST_CASE("involution, braid, and transpose-inverse identities") {
  for (const char* label : {"A1", "A2", "A3", "B2", "C2", "G2"}) {
    RootSystem rs = RootSystem::build(label);
    const int n = rs.rank();
    for (int i = 0; i < n; ++i) {
      CHECK((rs.simple_var(i) * rs.simple_var(i)).is_identity());
      for (int j = i + 1; j < n; ++j) {
        int m = braid_order(rs.cartan()[static_cast<std::size_t>(i)]
                                       [static_cast<std::size_t>(j)] *
                            rs.cartan()[static_cast<std::size_t>(j)]
                                       [static_cast<std::size_t>(i)]);
        Mat<Q> prod = rs.simple_var(i) * rs.simple_var(j);
        Mat<Q> acc = Mat<Q>::identity(n);
        for (int k = 0; k < m; ++k) acc = acc * prod;
        CHECK(acc.is_identity());
      }
    }
    for (const auto& e : rs.elements())
      CHECK((e.var.transpose() * e.pt).is_identity());
  }
}

TEST_CASE("length identities across products") {
  for (const char* label : {"A2", "B2", "G2"}) {
    RootSystem rs = RootSystem::build(label);
    for (int u = 0; u < rs.order(); ++u) {
      for (int s = 0; s < rs.rank(); ++s) {
        int us = rs.mult_simple(u, s);
        CHECK(std::abs(rs.length(us) - rs.length(u)) == 1);
      }
      for (int v = 0; v < rs.order(); ++v)
        CHECK(rs.length(rs.mult(u, v)) <= rs.length(u) + rs.length(v));
    }
  }
}

TEST_CASE("bruhat order axioms and the subword oracle") {
  for (const char* label : {"A1", "A2", "B2", "C2", "G2"}) {
    RootSystem rs = RootSystem::build(label);
    const int N = rs.order();
    for (int u = 0; u < N; ++u) {
      CHECK(rs.bruhat_leq(u, u));
      for (int w = 0; w < N; ++w) {
        if (rs.bruhat_leq(u, w) && rs.bruhat_leq(w, u)) CHECK(u == w);
        for (int v = 0; v < N; ++v)
          if (rs.bruhat_leq(u, w) && rs.bruhat_leq(w, v))
            CHECK(rs.bruhat_leq(u, v));
      }
    }
  }
  for (const char* label : {"A2", "B2"}) {
    RootSystem rs = RootSystem::build(label);
    for (int w = 0; w < rs.order(); ++w) {
      std::set<int> oracle = subword_closure(rs, w);
      for (int u = 0; u < rs.order(); ++u)
        CHECK(rs.bruhat_leq(u, w) == (oracle.count(u) > 0));
    }
  }
}

TEST_CASE("bruhat reference comparisons") {
  RootSystem rs = RootSystem::build("A2");
  for (int w = 0; w < rs.order(); ++w) CHECK(rs.bruhat_leq(0, w));
  int s1 = rs.element_by_word({0});
  CHECK(!rs.bruhat_leq(rs.w0(), s1));
  int s1s2s1 = rs.element_by_word({0, 1, 0});
  CHECK(rs.bruhat_leq(s1, s1s2s1));
  CHECK(s1s2s1 == rs.w0());
}

TEST_CASE("closed subsets are exactly the order ideals") {
  RootSystem a1 = RootSystem::build("A1");
  CHECK(a1.closed_subsets().size() == 3);
  RootSystem a2 = RootSystem::build("A2");
  auto subsets = a2.closed_subsets();
  CHECK(subsets.size() == 9);
  for (const auto& s : subsets) CHECK(a2.is_closed(s));
  int s1 = a2.element_by_word({0});
  int s1s2 = a2.element_by_word({0, 1});
  CHECK(a2.is_closed({0, s1}));
  CHECK(!a2.is_closed({0, s1s2}));
  CHECK(a2.is_closed({}));
  CHECK_THROWS_AS(RootSystem::build("A3").closed_subsets(12), Error);
}

TEST_CASE("canonical words and round trips") {
  RootSystem a2 = RootSystem::build("A2");
  CHECK(a2.word_str(a2.w0()) == "s1 s2 s1");
  CHECK(a2.word_str(0) == "e");
  RootSystem g2 = RootSystem::build("G2");
  for (int u = 0; u < g2.order(); ++u) {
    CHECK(g2.element_by_word(g2.parse_word(g2.word_str(u))) == u);
    CHECK(g2.mult(u, g2.inverse(u)) == 0);
  }
  CHECK_THROWS_AS(a2.parse_word("s3"), Error);
  CHECK_THROWS_AS(a2.parse_word("t1"), Error);
}

TEST_CASE("rho and rho-check coordinates") {
  RootSystem a1 = RootSystem::build("A1");
  CHECK(a1.rho_check() == std::vector<Q>{Q(1, 2)});
  RootSystem a2 = RootSystem::build("A2");
  CHECK(a2.rho() == std::vector<Q>{Q(1), Q(1)});
  CHECK(a2.rho_check() == std::vector<Q>{Q(1), Q(1)});
}

TEST_CASE("lattice membership under both choices") {
  RootSystem weight = RootSystem::build("A2", Lattice::weight);
  RootSystem root = RootSystem::build("A2", Lattice::root);
  std::vector<Q> theta{Q(1), Q(1)};   // alpha1 + alpha2
  std::vector<Q> omega1{Q(1), Q(0)};  // fundamental weight
  CHECK(weight.lattice_contains(theta));
  CHECK(weight.lattice_contains(omega1));
  CHECK(root.lattice_contains(theta));
  CHECK(!root.lattice_contains(omega1));
  CHECK(!weight.lattice_contains({Q(1, 2), Q(0)}));
}

TEST_CASE("poincare polynomial of the symmetric group") {
  RootSystem a2 = RootSystem::build("A2");
  UPoly<Q> p = a2.poincare();
  CHECK(p.coeff(0) == Q(1));
  CHECK(p.coeff(1) == Q(2));
  CHECK(p.coeff(2) == Q(2));
  CHECK(p.coeff(3) == Q(1));
  CHECK(p.degree() == 3);
}

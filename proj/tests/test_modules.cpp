#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "weylkit/invariants.hpp"
#include "weylkit/poly_text.hpp"
#include "weylkit/resolution.hpp"

using namespace weylkit;
using namespace weylkit::exact;

namespace {

Mat<Q> mat2(long a, long b, long c, long d) {
  Mat<Q> m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

}  // namespace

TEST_CASE("module division identity and representation tracking") {
  RingPtr R = make_ring({"x", "y"});
  ModOrder ord{R.get(), {}};
  std::vector<MVec<Q>> input;
  MVec<Q> g1 = MVec<Q>::zero(R, 2);
  g1.c[0] = parse_poly<Q>(R, "x^2 - y");
  g1.c[1] = parse_poly<Q>(R, "x");
  MVec<Q> g2 = MVec<Q>::zero(R, 2);
  g2.c[0] = parse_poly<Q>(R, "y");
  g2.c[1] = parse_poly<Q>(R, "x*y - 1");
  input.push_back(g1);
  input.push_back(g2);
  ModuleGB<Q> gb = module_groebner(R, ord, input);
  for (std::size_t k = 0; k < gb.gens.size(); ++k) {
    MVec<Q> acc = MVec<Q>::zero(R, 2);
    for (std::size_t j = 0; j < input.size(); ++j) {
      MVec<Q> term = input[j].scaled(gb.reps[k][j]);
      acc = acc + term;
    }
    CHECK(acc == gb.gens[k]);
  }
  MVec<Q> f = MVec<Q>::zero(R, 2);
  f.c[0] = parse_poly<Q>(R, "x^3 + y^2 - 2");
  f.c[1] = parse_poly<Q>(R, "x*y + 5");
  std::vector<Poly<Q>> q;
  MVec<Q> r = module_nf(R, ord, f, gb.gens, &q);
  MVec<Q> acc = r;
  for (std::size_t i = 0; i < gb.gens.size(); ++i)
    acc = acc + gb.gens[i].scaled(q[i]);
  CHECK(acc == f);
}

TEST_CASE("syzygies annihilate their input") {
  RingPtr R = make_ring({"x", "y"});
  ModOrder ord{R.get(), {}};
  std::vector<MVec<Q>> input;
  for (const char* s : {"x^2", "x*y", "y^2"}) {
    MVec<Q> v = MVec<Q>::zero(R, 1);
    v.c[0] = parse_poly<Q>(R, s);
    input.push_back(v);
  }
  auto syz = syzygies(R, ord, input);
  CHECK(!syz.empty());
  for (const auto& s : syz) {
    Poly<Q> acc(R);
    for (std::size_t j = 0; j < input.size(); ++j)
      acc += s.c[j] * input[j].c[0];
    CHECK(acc.is_zero());
  }
}

TEST_CASE("resolutions of the reference modules") {
  RingPtr R1 = make_ring({"x"});
  ModulePresentation<Q> free_mod{R1, {0, 1}, {}};
  auto rfree = free_resolution(free_mod, 5);
  CHECK(rfree.complete);
  CHECK(rfree.maps.empty());

  MVec<Q> xcol = MVec<Q>::zero(R1, 1);
  xcol.c[0] = parse_poly<Q>(R1, "x");
  ModulePresentation<Q> kx{R1, {0}, {xcol}};
  auto rk = free_resolution(kx, 5);
  CHECK(rk.complete);
  REQUIRE(rk.maps.size() == 1);
  CHECK(rk.maps[0].size() == 1);

  RingPtr R = make_ring({"x", "y"});
  MVec<Q> cx = MVec<Q>::zero(R, 1), cy = MVec<Q>::zero(R, 1);
  cx.c[0] = parse_poly<Q>(R, "x");
  cy.c[0] = parse_poly<Q>(R, "y");
  ModulePresentation<Q> origin{R, {0}, {cx, cy}};
  auto rk2 = free_resolution(origin, 6);
  CHECK(rk2.complete);
  REQUIRE(rk2.maps.size() == 2);
  CHECK(rk2.maps[0].size() == 2);
  CHECK(rk2.maps[1].size() == 1);
  CHECK(rk2.twists[0] == std::vector<int>{0});
  CHECK(rk2.twists[1] == std::vector<int>{1, 1});
  CHECK(rk2.twists[2] == std::vector<int>{2});
  // composite of consecutive maps vanishes
  for (const auto& s : rk2.maps[1]) {
    Poly<Q> acc(R);
    for (std::size_t j = 0; j < rk2.maps[0].size(); ++j)
      acc += s.c[j] * rk2.maps[0][j].c[0];
    CHECK(acc.is_zero());
  }
  HilbertSeries hs = module_hilbert(origin);
  CHECK(hs.dim() == 1);
}

TEST_CASE("module hilbert series respects generator twists") {
  RingPtr R = make_ring({"x", "y"});
  ModulePresentation<Q> shifted{R, {0, 1}, {}};
  HilbertSeries hs = module_hilbert(shifted);
  auto c = hs.coefficients(3);
  CHECK(c == std::vector<Q>{Q(1), Q(3), Q(5), Q(7)});
}

TEST_CASE("sign action on one variable") {
  Mat<Q> s(1, 1);
  s.at(0, 0) = -1;
  auto g = matrix_group_closure<Q>({s});
  CHECK(g.order() == 2);
  RingPtr R = make_ring({"x"});
  auto fi = fundamental_invariants(R, g);
  REQUIRE(fi.degrees == std::vector<int>{2});
  CHECK(fi.polys[0] == parse_poly<Q>(R, "x^2"));
}

TEST_CASE("symmetric group on the A2 reflection representation") {
  RingPtr R = make_ring({"x1", "x2"});
  Mat<Q> s1 = mat2(-1, 1, 0, 1);
  Mat<Q> s2 = mat2(1, 0, 1, -1);
  auto g = matrix_group_closure<Q>({s1, s2});
  CHECK(g.order() == 6);
  CHECK(reflection_indices(g).size() == 3);
  auto fi = fundamental_invariants(R, g);
  CHECK(fi.degrees == std::vector<int>{2, 3});
  for (const auto& f : fi.polys) {
    CHECK(act_poly(s1, f) == f);
    CHECK(act_poly(s2, f) == f);
  }
  CHECK(coinvariant_dims(R, fi.polys) == std::vector<int>{1, 2, 2, 1});
  auto molien = molien_series(g, 6);
  CHECK(molien == std::vector<Q>{Q(1), Q(0), Q(1), Q(1), Q(1), Q(1), Q(2)});
  for (int d = 0; d <= 5; ++d)
    CHECK(Q(static_cast<long>(invariant_basis(R, g, d).size())) ==
          molien[static_cast<std::size_t>(d)]);
}

TEST_CASE("hyperoctahedral rank two") {
  RingPtr R = make_ring({"x1", "x2"});
  Mat<Q> s1 = mat2(-1, 1, 0, 1);
  Mat<Q> s2 = mat2(1, 0, 2, -1);
  auto g = matrix_group_closure<Q>({s1, s2});
  CHECK(g.order() == 8);
  auto fi = fundamental_invariants(R, g);
  CHECK(fi.degrees == std::vector<int>{2, 4});
  CHECK(coinvariant_dims(R, fi.polys) == std::vector<int>{1, 2, 2, 2, 1});
}

TEST_CASE("order-three pseudo-reflection over a cyclotomic field") {
  RingPtr R = make_ring({"x"});
  Mat<Cyc> m(1, 1);
  m.at(0, 0) = Cyc::zeta(3, 1);
  auto g = matrix_group_closure<Cyc>({m});
  CHECK(g.order() == 3);
  CHECK(reflection_indices(g).size() == 2);
  auto fi = fundamental_invariants(R, g);
  CHECK(fi.degrees == std::vector<int>{3});
  auto form = reflection_form(g.elements[1]);
  Cyc chi = reflection_eigenvalue(g.elements[1], form);
  CHECK((chi == Cyc::zeta(3, 1) || chi == Cyc::zeta(3, 2)));
  auto molien = molien_series(g, 7);
  CHECK(molien == std::vector<Q>{Q(1), Q(0), Q(0), Q(1), Q(0), Q(0), Q(1), Q(0)});
}

TEST_CASE("non-reflection group is rejected") {
  // the rotation subgroup of A2: no reflections, invariants not polynomial
  Mat<Q> rot = mat2(-1, 1, 0, 1) * mat2(1, 0, 1, -1);
  auto g = matrix_group_closure<Q>({rot});
  CHECK(g.order() == 3);
  CHECK(reflection_indices(g).empty());
  CHECK_THROWS_AS(fundamental_invariants(make_ring({"x1", "x2"}), g), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "weylkit/cyclotomic.hpp"
#include "weylkit/ideal.hpp"
#include "weylkit/linalg.hpp"
#include "weylkit/poly_text.hpp"
#include "weylkit/unipoly.hpp"

using namespace weylkit;
using namespace weylkit::exact;

TEST_CASE("rational parsing and powers") {
  CHECK(q_parse("3/6") == Q(1, 2));
  CHECK(q_parse("-2") == Q(-2));
  CHECK(q_str(Q(-7, 3)) == "-7/3");
  CHECK(q_str(Q(5)) == "5");
  CHECK(q_pow(Q(2, 3), -2) == Q(9, 4));
  CHECK(q_pow(Q(5), 0) == Q(1));
  CHECK_THROWS_AS(q_parse("1/0"), Error);
  CHECK_THROWS_AS(q_parse("x"), Error);
}

TEST_CASE("cyclotomic arithmetic in conductor 3, 4, 6") {
  Cyc z3 = Cyc::zeta(3, 1);
  CHECK((z3 * z3 + z3 + Cyc(Q(1))).is_zero());
  Cyc s = z3 * z3 + z3;
  CHECK(s.is_rational());
  CHECK(s.rational_value() == Q(-1));
  Cyc z4 = Cyc::zeta(4, 1);
  CHECK((z4 * z4 + Cyc(Q(1))).is_zero());
  Cyc z6cube = Cyc::zeta(6, 3);
  CHECK(z6cube.is_rational());
  CHECK(z6cube.rational_value() == Q(-1));
  Cyc u = Cyc(Q(1)) + z3;
  CHECK((u * u.inverse()).is_rational());
  CHECK((u * u.inverse()).rational_value() == Q(1));
  CHECK_THROWS_AS(z3 + z4, Error);
  CHECK((z3 / z3).rational_value() == Q(1));
}

TEST_CASE("dense linear algebra over Q") {
  Mat<Q> A(2, 2);
  A.at(0, 0) = 1;
  A.at(0, 1) = 2;
  A.at(1, 0) = 3;
  A.at(1, 1) = 4;
  CHECK(det(A) == Q(-2));
  Mat<Q> Ai = inverse(A).value();
  CHECK((A * Ai).is_identity());
  Mat<Q> B(1, 2);
  B.at(0, 0) = 1;
  B.at(0, 1) = 1;
  Mat<Q> ker = kernel_basis(B);
  CHECK(ker.cols() == 1);
  CHECK(ker.at(0, 0) + ker.at(1, 0) == Q(0));
  std::vector<Q> rhs{Q(2), Q(5)};
  auto sol = solve(A, rhs);
  REQUIRE(sol.has_value());
  CHECK(A.apply(*sol) == rhs);
  Mat<Q> sing(2, 2);
  sing.at(0, 0) = 1;
  sing.at(0, 1) = 1;
  sing.at(1, 0) = 1;
  sing.at(1, 1) = 1;
  std::vector<Q> bad{Q(0), Q(1)};
  CHECK(!solve(sing, bad).has_value());
  CHECK(rank_of(sing) == 1);
}

TEST_CASE("univariate polynomials and series") {
  UPoly<Q> omt2 = UPoly<Q>::one_minus_power(2);
  UPoly<Q> omt = UPoly<Q>::one_minus_power(1);
  UPoly<Q> q = omt2.divexact(omt);
  CHECK(q.coeff(0) == Q(1));
  CHECK(q.coeff(1) == Q(1));
  CHECK(q.degree() == 1);
  UPoly<Q> g = upoly_gcd(omt2, UPoly<Q>::one_minus_power(3));
  CHECK(g.degree() == 1);
  CHECK(g.coeff(1) == Q(1));
  CHECK(g.coeff(0) == Q(-1));
  RatFun<Q> f{UPoly<Q>::constant(Q(1)), omt * omt};
  auto c = f.series(4);
  CHECK(c == std::vector<Q>{Q(1), Q(2), Q(3), Q(4), Q(5)});
}

TEST_CASE("multivariate ordering, parsing, substitution") {
  RingPtr R = make_ring({"x", "y"});
  auto f = parse_poly<Q>(R, "x^2 + x*y + y^2 + x + y + 1");
  CHECK(f.lm() == Mono::var(2, 0, 2));
  CHECK(f.str() == "x^2 + x*y + y^2 + x + y + 1");
  CHECK(parse_poly<Q>(R, f.str()) == f);
  auto g = parse_poly<Q>(R, "-1/2*x + y");
  CHECK(parse_poly<Q>(R, g.str()) == g);
  Mat<Q> M(2, 2);
  M.at(0, 0) = -1;
  M.at(1, 1) = 1;
  auto h = parse_poly<Q>(R, "x^2 + x + y");
  CHECK(h.linear_substitute(M) == parse_poly<Q>(R, "x^2 - x + y"));
  CHECK(h.evaluate({Q(2), Q(3)}) == Q(9));
  auto fr = parse_poly<Q>(R, "1/2*x + 1/3*y");
  normalize_unit(fr);
  CHECK(fr == parse_poly<Q>(R, "3*x + 2*y"));
  CHECK_THROWS_AS(parse_poly<Q>(R, "z + 1"), Error);
  CHECK_THROWS_AS(parse_poly<Q>(R, "zeta3*x"), Error);
  RingPtr RC = make_ring({"x"});
  auto fc = parse_poly<Cyc>(RC, "zeta3*x - zeta3^2");
  CHECK(fc.lc() == Cyc::zeta(3, 1));
  CHECK(parse_poly<Cyc>(RC, fc.str()) == fc);
}

TEST_CASE("elimination order puts the first block on top") {
  RingPtr E = make_ring({"@t", "x", "y"}, OrderKind::elim, 1);
  Mono t = Mono::var(3, 0);
  Mono x2;
  x2.e = {0, 2, 0};
  x2.deg = 2;
  CHECK(mono_cmp(*E, t, x2) > 0);
  Mono xy;
  xy.e = {0, 1, 1};
  xy.deg = 2;
  CHECK(mono_cmp(*E, x2, xy) > 0);
}

TEST_CASE("groebner bases of the three reference ideals") {
  RingPtr R = make_ring({"x", "y"});
  auto gb1 = groebner_basis<Q>(R, {parse_poly<Q>(R, "x^2"), parse_poly<Q>(R, "x*y")});
  REQUIRE(gb1.size() == 2);
  CHECK(gb1[0] == parse_poly<Q>(R, "x^2"));
  CHECK(gb1[1] == parse_poly<Q>(R, "x*y"));
  auto gb2 = groebner_basis<Q>(R, {parse_poly<Q>(R, "y-x"), parse_poly<Q>(R, "y+x")});
  REQUIRE(gb2.size() == 2);
  CHECK(gb2[0] == parse_poly<Q>(R, "x"));
  CHECK(gb2[1] == parse_poly<Q>(R, "y"));
  auto gb3 = groebner_basis<Q>(R, {parse_poly<Q>(R, "y-x") * parse_poly<Q>(R, "y+x")});
  REQUIRE(gb3.size() == 1);
  CHECK(gb3[0] == parse_poly<Q>(R, "x^2 - y^2"));
}

namespace {

Poly<Q> random_poly(const RingPtr& R, std::mt19937_64& rng, int maxdeg) {
  std::uniform_int_distribution<int> nterms(1, 4), coef(-3, 3), deg(0, maxdeg);
  Poly<Q> f(R);
  for (int t = 0; t < nterms(rng); ++t) {
    int c = coef(rng);
    if (c == 0) c = 1;
    int d = deg(rng);
    Mono m = Mono::one(R->n);
    std::uniform_int_distribution<int> pick(0, R->n - 1);
    for (int k = 0; k < d; ++k) {
      int v = pick(rng);
      ++m.e[static_cast<std::size_t>(v)];
      ++m.deg;
    }
    f += Poly<Q>::term(R, m, Q(c));
  }
  return f;
}

}  // namespace

TEST_CASE("normal forms kill ideal members") {
  RingPtr R = make_ring({"x", "y"});
  Ideal<Q> I(R, {parse_poly<Q>(R, "x^2 - y"), parse_poly<Q>(R, "x*y - 1")});
  std::mt19937_64 rng(20260819);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_poly(R, rng, 3);
    auto h = random_poly(R, rng, 3);
    const auto& g = I.gens()[static_cast<std::size_t>(trial % 2)];
    CHECK(I.reduce(f * g + h) == I.reduce(h));
  }
}

TEST_CASE("ideal intersection agrees with pairwise membership") {
  RingPtr R = make_ring({"x", "y"});
  Ideal<Q> I(R, {parse_poly<Q>(R, "x^2"), parse_poly<Q>(R, "x*y")});
  Ideal<Q> J(R, {parse_poly<Q>(R, "y")});
  Ideal<Q> meet = ideal_intersect(I, J);
  std::mt19937_64 rng(7);
  int members = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto f = random_poly(R, rng, 4);
    if (trial % 3 == 0) f = f * parse_poly<Q>(R, "x*y");  // guaranteed member
    bool both = I.contains(f) && J.contains(f);
    CHECK(meet.contains(f) == both);
    if (both) ++members;
  }
  CHECK(members >= 20);
}

TEST_CASE("intersection of comaximal-off-locus principal ideals") {
  RingPtr R = make_ring({"x", "y"});
  Ideal<Q> I(R, {parse_poly<Q>(R, "y - x")});
  Ideal<Q> J(R, {parse_poly<Q>(R, "y + x - 2")});
  Ideal<Q> meet = ideal_intersect(I, J);
  Ideal<Q> prod(R, {parse_poly<Q>(R, "y - x") * parse_poly<Q>(R, "y + x - 2")});
  CHECK(meet.basis() == prod.basis());
  Ideal<Q> self = ideal_intersect(I, I);
  CHECK(self.basis() == I.basis());
}

TEST_CASE("degree-one element in the rank-two reflection intersection") {
  // variables hx,px and their second copies hy,py; s negates h, fixes p
  RingPtr R = make_ring({"hx", "px", "hy", "py"});
  Ideal<Q> Ie(R, {parse_poly<Q>(R, "hy - hx"), parse_poly<Q>(R, "py - px")});
  Ideal<Q> Is(R, {parse_poly<Q>(R, "hy + hx"), parse_poly<Q>(R, "py - px")});
  Ideal<Q> meet = ideal_intersect(Ie, Is);
  CHECK(meet.contains(parse_poly<Q>(R, "py - px")));
  int mindeg = 100;
  for (const auto& g : meet.basis()) mindeg = std::min(mindeg, g.total_degree());
  CHECK(mindeg == 1);
}

TEST_CASE("hilbert series and staircase dimensions") {
  RingPtr R1 = make_ring({"x"});
  Ideal<Q> I1(R1, {parse_poly<Q>(R1, "x^2")});
  HilbertSeries h1 = quotient_hilbert(I1);
  HilbertSeries expect1{UPoly<Q>(std::vector<Q>{Q(1), Q(1)}), 0};
  CHECK(h1 == expect1);
  CHECK(quotient_dim(I1).value() == 2);

  RingPtr R = make_ring({"x", "y"});
  Ideal<Q> IW(R, {parse_poly<Q>(R, "y^2 - x^2")});
  HilbertSeries hw = quotient_hilbert(IW);
  HilbertSeries expectw{UPoly<Q>(std::vector<Q>{Q(1), Q(1)}), 1};
  CHECK(hw == expectw);
  CHECK(!hw.finite());
  CHECK(!quotient_dim(IW).has_value());
  auto coeffs = hw.coefficients(3);
  CHECK(coeffs == std::vector<Q>{Q(1), Q(2), Q(2), Q(2)});

  Ideal<Q> JW(R, {parse_poly<Q>(R, "y^2 - x^2"), parse_poly<Q>(R, "x")});
  CHECK(quotient_dim(JW).value() == 2);
  auto sm = standard_monomials(JW);
  REQUIRE(sm.size() == 2);
  CHECK(sm[0] == Mono::one(2));
  CHECK(sm[1] == Mono::var(2, 1));
}

TEST_CASE("groebner over a cyclotomic field") {
  RingPtr R = make_ring({"x", "y"});
  Cyc z = Cyc::zeta(3, 1);
  auto f = Poly<Cyc>::variable(R, 0) * z + Poly<Cyc>::variable(R, 1);
  auto g = Poly<Cyc>::variable(R, 0) - Poly<Cyc>::variable(R, 1);
  auto gb = groebner_basis<Cyc>(R, {f, g});
  REQUIRE(gb.size() == 2);
  CHECK(gb[0] == Poly<Cyc>::variable(R, 0));
  CHECK(gb[1] == Poly<Cyc>::variable(R, 1));
}

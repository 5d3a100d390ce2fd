#include <doctest.h>

#include "support.hpp"
#include "varred/expr.hpp"
#include "varred/factor.hpp"
#include "varred/integrate.hpp"

using namespace varred;

namespace {
RatFun R(const char* s) { return parse_ratfun(s); }
Poly P(const char* s) { return parse_ratfun(s).num(); }
}  // namespace

TEST_CASE("parse_ratfun canonical forms") {
  RatFun a = R("2/x");
  CHECK(a.num() == Poly{2});
  CHECK(a.den() == Poly::x());

  RatFun b = R("2*(x^4 - 10*x^2 + 1)/(x*(x^2 + 1)^2)");
  CHECK(b.den() == Poly{0, 1, 0, 2, 0, 1});
  CHECK(b.num() == Poly{2, 0, -20, 0, 2});

  CHECK(R("(x^2-1)/(x-1)") == R("x+1"));
  CHECK(R("(x^2-1)/(x-1)").is_polynomial());
  CHECK(R("  - ( x ) ^ 2 ") == -R("x^2"));
  CHECK(R("6/(4*x)").den().leading() == 1);
}

TEST_CASE("parse_ratfun errors") {
  CHECK_THROWS_AS(R("x +"), ParseError);
  CHECK_THROWS_AS(R("(x"), ParseError);
  CHECK_THROWS_AS(R("x^-1"), ParseError);
  CHECK_THROWS_AS(R("1/(x - x)"), ParseError);
  CHECK_THROWS_AS(R("y"), ParseError);
  try {
    R("x + * 2");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() != ParseError::npos);
  }
  CHECK(parse_ratfun("t^2", "t") == R("x^2"));
}

TEST_CASE("render round trip") {
  testing::Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    RatFun f = rng.ratfun(5);
    CHECK(parse_ratfun(f.to_string()) == f);
    CHECK(parse_ratfun(f.to_string("t"), "t") == f);
  }
}

TEST_CASE("derivative") {
  CHECK(R("x^2").derivative() == R("2*x"));
  CHECK(R("1/x").derivative() == R("-1/x^2"));
  CHECK(R("-1/(x^2+1)").derivative() == R("2*x/(x^2+1)^2"));
  CHECK(RatFun(Rational(7, 3)).derivative().is_zero());
}

TEST_CASE("derivative is a derivation") {
  testing::Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    RatFun f = rng.ratfun(4), g = rng.ratfun(4);
    CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
    CHECK((f + g).derivative() == f.derivative() + g.derivative());
  }
}

TEST_CASE("field axioms on random elements") {
  testing::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    RatFun f = rng.ratfun(4), g = rng.ratfun(4), h = rng.ratfun(3);
    CHECK((f + g) * h == f * h + g * h);
    CHECK(f - f == RatFun());
    if (!f.is_zero()) CHECK(f * f.inverse() == RatFun(1));
    CHECK(f.den().leading() == 1);
    CHECK(gcd(f.num(), f.den()).is_constant());
  }
}

TEST_CASE("polynomial gcd and division") {
  testing::Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    Poly a = rng.nonzero_poly(6), b = rng.nonzero_poly(4), c = rng.nonzero_poly(3);
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK((r.is_zero() || r.degree() < b.degree()));
    Poly g = gcd(a * c, b * c);
    CHECK((g % c.monic()).is_zero());
    auto eg = extended_gcd(a, b);
    CHECK(eg.s * a + eg.t * b == eg.g);
  }
  CHECK_THROWS(divmod(Poly{1, 2}, Poly()));
  CHECK_THROWS(Poly().degree());
}

TEST_CASE("factorization over Q") {
  auto fs = factor(P("(x^2+1)^2*x*(x-1)*(2*x+3)"));
  REQUIRE(fs.size() == 4);
  Poly prod(Rational(1));
  for (const auto& f : fs) prod *= pow(f.factor, f.multiplicity);
  CHECK(prod == P("(x^2+1)^2*x*(x-1)*(x+3/2)"));
  CHECK(factor(P("x^4+1")).size() == 1);
  CHECK(factor(P("x^8-1")).size() == 4);  // x-1, x+1, x^2+1, x^4+1
  CHECK(factor(P("(x^4-10*x^2+1)*(x^2-2)")).size() == 2);
  auto sq = squarefree_decomposition(P("x^3*(x-1)^2*(x+1)"));
  CHECK(is_squarefree(P("x*(x-1)")));
  CHECK_FALSE(is_squarefree(P("x^2*(x-1)")));
  CHECK(sq.size() >= 3);
}

TEST_CASE("partial fractions") {
  RatFun f = R("2*(x^4 - 10*x^2 + 1)/(x*(x^2 + 1)^2)");
  PFDecomp pf = partial_fractions(f);
  CHECK(pf.recombine() == f);
  CHECK(pf.polynomial_part.is_zero());
  RatFun sum;
  for (const auto& t : pf.terms)
    if (!t.numerator.is_zero()) sum += RatFun(t.numerator, pow(t.factor, t.multiplicity));
  CHECK(sum == R("2/x - 24*x/(x^2+1)^2"));

  PFDecomp inv2 = partial_fractions(R("1/x^2"));
  REQUIRE(inv2.terms.size() >= 1);
  std::size_t nonzero = 0;
  for (const auto& t : inv2.terms)
    if (!t.numerator.is_zero()) {
      ++nonzero;
      CHECK(t.factor == Poly::x());
      CHECK(t.multiplicity == 2);
    }
  CHECK(nonzero == 1);

  PFDecomp cube = partial_fractions(R("x^3"));
  CHECK(cube.polynomial_part == P("x^3"));
  CHECK(cube.terms.empty());
}

TEST_CASE("partial fractions recombine on random input") {
  testing::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    RatFun f = rng.ratfun_with_poles(7);
    PFDecomp pf = partial_fractions(f);
    CHECK(pf.recombine() == f);
    for (const auto& t : pf.terms) {
      CHECK(factor(t.factor).size() == 1);
      CHECK((t.numerator.is_zero() || t.numerator.degree() < t.factor.degree()));
    }
  }
}

TEST_CASE("hermite_split examples") {
  auto a = hermite_split(R("1/x^2"));
  CHECK(a.R == R("-1/x"));
  CHECK(a.L.is_zero());
  auto b = hermite_split(R("1/x"));
  CHECK(b.R.is_zero());
  CHECK(b.L == R("1/x"));
  auto c = hermite_split(R("2*x/(x^2+1)^2"));
  CHECK(c.R == R("-1/(x^2+1)"));
  CHECK(c.L.is_zero());
  auto d = hermite_split(R("(x^5+3)/(x^3*(x-1)^2*(x^2+1))"));
  CHECK(d.R.derivative() + d.L == R("(x^5+3)/(x^3*(x-1)^2*(x^2+1))"));
  CHECK(is_squarefree(d.L.den()));
}

TEST_CASE("hermite_split algebraic-constant free") {
  // the log part of 1/(x^2 - 2) is kept as a whole; no sqrt(2) appears
  auto h = hermite_split(R("1/(x^2-2)"));
  CHECK(h.R.is_zero());
  CHECK(h.L == R("1/(x^2-2)"));
}

TEST_CASE("solve_first_order_rational examples") {
  CHECK(solve_first_order_rational(RatFun(), R("1/x^2")) == R("-1/x"));
  CHECK(solve_first_order_rational(R("2/x"), R("x^2")) == R("x^3"));
  CHECK_FALSE(solve_first_order_rational(RatFun(), R("1/x")).has_value());
  auto g = solve_first_order_rational(R("-3/x"), R("x^2+1/x^5"));
  REQUIRE(g.has_value());
  CHECK(g->derivative() == R("-3/x") * *g + R("x^2+1/x^5"));
  // y' = y + 1 has only the solution -1 among rational functions
  CHECK(solve_first_order_rational(RatFun(1), RatFun(1)) == RatFun(-1));
  // y' = y + 1/x: no rational solution
  CHECK_FALSE(solve_first_order_rational(RatFun(1), R("1/x")).has_value());
}

TEST_CASE("solve_first_order_rational on manufactured equations") {
  testing::Rng rng(6);
  for (int i = 0; i < 150; ++i) {
    RatFun gamma = rng.ratfun_with_poles(3) * Rational(rng.integer(-4, 4));
    RatFun g0 = rng.ratfun_with_poles(3);
    RatFun beta = g0.derivative() - gamma * g0;
    auto g = solve_first_order_rational(gamma, beta);
    REQUIRE(g.has_value());
    CHECK(g->derivative() - gamma * *g - beta == RatFun());
  }
}

TEST_CASE("pole helpers") {
  RatFun f = R("1/(x^2*(x^2+1))");
  auto poles = pole_factors(f);
  REQUIRE(poles.size() == 2);
  CHECK(pole_order(f, Poly::x()) == 2);
  CHECK(pole_order(f, P("x^2+1")) == 1);
  CHECK(degree_at_infinity(f) == -4);
  CHECK(degree_at_infinity(R("x^3/(x+1)")) == 2);
}

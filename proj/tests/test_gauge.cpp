#include <doctest.h>

#include "support.hpp"
#include "varred/expr.hpp"
#include "varred/fixtures.hpp"
#include "varred/gauge.hpp"
#include "varred/lie.hpp"
#include "varred/varequations.hpp"

using namespace varred;

namespace {

RatMat diag2(const RatFun& a, const RatFun& b) {
  RatMat m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

RatMat diag3(const RatFun& a, const RatFun& b, const RatFun& c) {
  RatMat m(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("apply_gauge examples") {
  testing::Rng rng(30);
  RatMat A = rng.rat_mat(3, 3, 2);
  CHECK(apply_gauge(GaugeMatrix::identity(3), A) == A);
  CHECK(apply_gauge(fixtures::hh_P1(), fixtures::hh_A1()) == scale(fixtures::hh_D1(), parse_ratfun("5/(3*x)")));
  // constant diagonal gauge: conjugation only
  RatMat P = RatMat::identity(3);
  P(0, 0) = RatFun(Rational(4));
  GaugeMatrix G(P);
  CHECK(apply_gauge(G, A) == G.P_inv() * A * G.P());
  CHECK_THROWS_AS(apply_gauge(G, RatMat(2, 2)), PreconditionError);
}

TEST_CASE("GaugeMatrix validates its inverse") {
  RatMat P = RatMat::identity(2);
  P(0, 1) = parse_ratfun("x");
  CHECK_NOTHROW(GaugeMatrix(P));
  CHECK_THROWS_AS(GaugeMatrix(P, RatMat::identity(2)), PreconditionError);
  CHECK_THROWS_AS(GaugeMatrix(RatMat(2, 2)), PreconditionError);
}

TEST_CASE("SymIndex ordering and size") {
  SymIndex s(4, 3);
  CHECK(s.size() == binomial(6, 3).get_ui());
  CHECK(s[0] == std::vector<unsigned>{3, 0, 0, 0});
  CHECK(s[s.size() - 1] == std::vector<unsigned>{0, 0, 0, 3});
  for (std::size_t k = 0; k + 1 < s.size(); ++k) CHECK(s[k] > s[k + 1]);
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(s.index_of(s[k]) == k);
  CHECK_THROWS_AS(s.index_of({1, 0, 0, 0}), PreconditionError);
}

TEST_CASE("symmetric powers of examples") {
  RatMat I2 = RatMat::identity(2);
  CHECK(sym_power_group(I2, 2) == RatMat::identity(3));
  testing::Rng rng(31);
  RatMat P = rng.gauge(3, 2).P();
  CHECK(sym_power_group(P, 1) == P);
  CHECK(sym_power_algebra(P, 1) == P);
  RatFun a = parse_ratfun("x+1"), b = parse_ratfun("1/x");
  CHECK(sym_power_group(diag2(a, b), 2) == diag3(a * a, a * b, b * b));
  CHECK(sym_power_algebra(diag2(a, b), 2) == diag3(a * Rational(2), a + b, b * Rational(2)));
}

TEST_CASE("sym^m of A1R is the upper diagonal block after diagonal reduction") {
  auto sys = build_lve(fixtures::henon_heiles(), 3);
  RatMat A1R = fixtures::hh_A1R();
  // the diagonal blocks of A_m are sym^m(A1)
  CHECK(sys[1].matrix.block(0, 0, 10, 10) == sym_power_algebra(sys[0].matrix, 2));
  CHECK(sys[2].matrix.block(0, 0, 20, 20) == sym_power_algebra(sys[0].matrix, 3));
  GaugeMatrix S2(sym_power_group(fixtures::hh_P1().P(), 2));
  CHECK(apply_gauge(S2, sym_power_algebra(sys[0].matrix, 2)) == sym_power_algebra(A1R, 2));
}

TEST_CASE("Sym is a group morphism and compatible with gauges") {
  testing::Rng rng(32);
  for (int i = 0; i < 25; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 3));
    const std::size_t m = static_cast<std::size_t>(rng.integer(2, 3));
    GaugeMatrix P = rng.gauge(n, 1), Q = rng.gauge(n, 1);
    CHECK(sym_power_group(P.P() * Q.P(), m) == sym_power_group(P.P(), m) * sym_power_group(Q.P(), m));
    CHECK(sym_power_group(RatMat::identity(n), m) == RatMat::identity(sym_power_group(P.P(), m).rows()));
    RatMat A = rng.rat_mat(n, n, 1);
    GaugeMatrix SP(sym_power_group(P.P(), m));
    CHECK(apply_gauge(SP, sym_power_algebra(A, m)) == sym_power_algebra(apply_gauge(P, A), m));
  }
}

TEST_CASE("derivation compatibility for constant gauges") {
  testing::Rng rng(33);
  for (int i = 0; i < 25; ++i) {
    ConstMat C = rng.const_mat(3, 3);
    if (rank(C) < 3) continue;
    RatMat P = to_ratmat(C), Pinv = to_ratmat(inverse(C));
    RatMat A = rng.rat_mat(3, 3, 2);
    RatMat S = sym_power_group(P, 2), Sinv = sym_power_group(Pinv, 2);
    CHECK(Sinv * sym_power_algebra(A, 2) * S == sym_power_algebra(Pinv * A * P, 2));
  }
}

TEST_CASE("gauge composition") {
  testing::Rng rng(34);
  for (int i = 0; i < 20; ++i) {
    GaugeMatrix P = rng.gauge(3, 2), Q = rng.gauge(3, 2);
    RatMat A = rng.rat_mat(3, 3, 2);
    CHECK(apply_gauge(Q, apply_gauge(P, A)) == apply_gauge(P * Q, A));
  }
}

TEST_CASE("assemble_block_diag") {
  GaugeMatrix I = assemble_block_diag({GaugeMatrix::identity(2), GaugeMatrix::identity(3)});
  CHECK(I.P() == RatMat::identity(5));
  GaugeMatrix P1 = fixtures::hh_P1();
  CHECK(assemble_block_diag({P1}).P() == P1.P());
  GaugeMatrix Q2 = assemble_block_diag({GaugeMatrix(sym_power_group(P1.P(), 2)), P1});
  CHECK(Q2.P().block(0, 0, 10, 10) == sym_power_group(P1.P(), 2));
  CHECK(Q2.P().block(10, 10, 4, 4) == P1.P());
  CHECK(Q2.P().block(0, 10, 10, 4).is_zero());
  CHECK(Q2.P() * Q2.P_inv() == RatMat::identity(14));
}

TEST_CASE("block diagonal gauges preserve block lower triangular shape") {
  testing::Rng rng(35);
  for (int i = 0; i < 15; ++i) {
    GaugeMatrix Q = assemble_block_diag({rng.gauge(2, 1), rng.gauge(2, 1)});
    RatMat A = rng.rat_mat(4, 4, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 2; c < 4; ++c) A(r, c) = RatFun();
    CHECK(is_block_lower_triangular(apply_gauge(Q, A), 2));
  }
}

TEST_CASE("exp_sub_nilpotent") {
  ConstMat B(4, 4);
  B(2, 0) = 1;
  B(3, 1) = -2;
  CHECK(exp_sub_nilpotent(RatFun(), B).P() == RatMat::identity(4));
  RatFun g = parse_ratfun("-1/x");
  GaugeMatrix E = exp_sub_nilpotent(g, B);
  CHECK(E.P() == RatMat::identity(4) + scale(B, g));
  CHECK(E.P_inv() == RatMat::identity(4) - scale(B, g));
  ConstMat notnil(2, 2);
  notnil(0, 1) = notnil(1, 0) = 1;
  CHECK_THROWS_AS(exp_sub_nilpotent(g, notnil), PreconditionError);
}

TEST_CASE("apply_sub_gauge agrees with apply_gauge") {
  testing::Rng rng(36);
  for (int i = 0; i < 30; ++i) {
    const std::size_t d1 = static_cast<std::size_t>(rng.integer(1, 3)), d2 = static_cast<std::size_t>(rng.integer(1, 3));
    const std::size_t n = d1 + d2;
    RatMat A = rng.rat_mat(n, n, 2);
    for (std::size_t r = 0; r < d1; ++r)
      for (std::size_t c = d1; c < n; ++c) A(r, c) = RatFun();
    ConstMat C(n, n);
    C.set_block(d1, 0, rng.const_mat(d2, d1));
    RatFun g = rng.ratfun(2);
    CHECK(apply_sub_gauge(A, g, C, d1) == apply_gauge(exp_sub_nilpotent(g, C), A));
  }
}

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "varred/gauge.hpp"
#include "varred/matrix.hpp"
#include "varred/mpoly.hpp"
#include "varred/ratfun.hpp"
#include "varred/varequations.hpp"

namespace testing {

using namespace varred;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(long range = 5) {
    long den = integer(1, 3);
    Rational q(integer(-range, range), den);
    q.canonicalize();
    return q;
  }

  Poly poly(std::size_t max_degree, long range = 5) {
    std::size_t d = static_cast<std::size_t>(integer(0, static_cast<long>(max_degree)));
    std::vector<Rational> c(d + 1);
    for (auto& v : c) v = Rational(integer(-range, range));
    return Poly(std::move(c));
  }

  Poly nonzero_poly(std::size_t max_degree, long range = 5) {
    for (;;) {
      Poly p = poly(max_degree, range);
      if (!p.is_zero()) return p;
    }
  }

  /// numerator and denominator of degree <= max_degree
  RatFun ratfun(std::size_t max_degree, long range = 5) {
    return RatFun(poly(max_degree, range), nonzero_poly(max_degree, range));
  }

  /// denominator built from products of small linear and quadratic factors,
  /// so repeated poles occur often
  RatFun ratfun_with_poles(std::size_t max_degree) {
    static const char* kFactors[] = {"x", "x - 1", "x + 2", "x^2 + 1", "x^2 - 2", "2*x + 3"};
    Poly den(Rational(1));
    std::size_t deg = 0;
    const std::size_t target = static_cast<std::size_t>(integer(1, static_cast<long>(max_degree)));
    while (deg < target) {
      Poly f = parse_factor(kFactors[integer(0, 5)]);
      if (deg + f.degree() > max_degree) break;
      den *= f;
      deg += f.degree();
    }
    return RatFun(poly(max_degree), den);
  }

  ConstMat const_mat(std::size_t r, std::size_t c, long range = 3) {
    ConstMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Rational(integer(-range, range));
    return m;
  }

  RatMat rat_mat(std::size_t r, std::size_t c, std::size_t max_degree, double density = 0.6) {
    RatMat m(r, c);
    std::bernoulli_distribution keep(density);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (keep(gen_)) m(i, j) = ratfun(max_degree, 3);
    return m;
  }

  /// Invertible matrix over Q(x) with entries of degree <= max_degree.
  GaugeMatrix gauge(std::size_t n, std::size_t max_degree) {
    for (;;) {
      RatMat P = rat_mat(n, n, max_degree, 0.7);
      try {
        return GaugeMatrix(P);
      } catch (const PreconditionError&) {
      }
    }
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  static Poly parse_factor(const std::string& s);
  std::mt19937_64 gen_;
};

/// Independent LVE oracle: substitutes y = phi + u into the vector field,
/// expands X(phi + u) - X(phi) as a polynomial in u and forms
/// d/dt u^alpha = sum_i alpha_i u^(alpha - e_i) (X_i(phi + u) - X_i(phi)),
/// truncated at total degree m. Same state ordering as build_lve.
RatMat lve_by_substitution(const HamiltonianSpec& spec, std::size_t m);

/// Span of right-normed brackets [g1, [g2, ... [gk-1, gk]]] of word length <= depth.
std::vector<ConstMat> bracket_words(const std::vector<ConstMat>& gens, std::size_t depth);

/// exp(N) by the exact power series of a nilpotent N.
ConstMat exp_nilpotent_series(const ConstMat& N);

}  // namespace testing

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace varred {

using Rational = mpq_class;
using Integer = mpz_class;

/// Dense univariate polynomial over Q, coefficients in ascending degree.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial is
/// the empty vector. `degree()` is undefined on zero (throws); callers test
/// `is_zero()` first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs);
  explicit Poly(const Rational& c);

  static Poly monomial(const Rational& c, std::size_t degree);
  static Poly x() { return monomial(1, 1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  /// Degree of a nonzero polynomial. Throws std::domain_error on zero.
  std::size_t degree() const;
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient of x^i (zero beyond the degree).
  Rational coeff(std::size_t i) const;
  const Rational& leading() const;
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  Poly monic() const;
  Poly derivative() const;
  /// Antiderivative with zero constant term.
  Poly integral() const;
  Rational eval(const Rational& at) const;
  /// p(c * x)
  Poly scale_variable(const Rational& c) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Total order used for deterministic sorting (degree first, then coefficients).
  friend bool operator<(const Poly& a, const Poly& b);

  std::string to_string(std::string_view var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division: a = q*b + r with deg r < deg b. Throws on b == 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact quotient part only
Poly operator%(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);

struct ExtendedGcd {
  Poly g;  // monic gcd
  Poly s;  // s*a + t*b = g
  Poly t;
};
ExtendedGcd extended_gcd(const Poly& a, const Poly& b);

/// Solve s*a + t*b = c with deg s < deg b; requires gcd(a, b) = 1.
std::pair<Poly, Poly> solve_bezout(const Poly& a, const Poly& b, const Poly& c);

Poly pow(const Poly& p, std::size_t e);

/// Squarefree decomposition (Yun): returns monic D1..Dm with
/// monic(p) = D1 * D2^2 * ... * Dm^m, pairwise coprime, Dm nonconstant.
std::vector<Poly> squarefree_decomposition(const Poly& p);
bool is_squarefree(const Poly& p);

}  // namespace varred

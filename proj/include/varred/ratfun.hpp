#pragma once

#include <string>
#include <string_view>

#include "varred/poly.hpp"

namespace varred {

/// Element of Q(x) kept in canonical form: gcd(num, den) = 1 and den monic.
/// Structural equality therefore coincides with equality of functions.
class RatFun {
 public:
  RatFun() : den_(Rational(1)) {}
  RatFun(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT(implicit)
  RatFun(long c) : RatFun(Rational(c)) {}                    // NOLINT(implicit)
  explicit RatFun(Poly num) : num_(std::move(num)), den_(Rational(1)) {}
  /// Canonicalizes; throws std::domain_error when den is zero.
  RatFun(Poly num, Poly den);

  static RatFun x() { return RatFun(Poly::x()); }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  /// Value of a constant function; throws when not constant.
  Rational constant_value() const;

  RatFun derivative() const;
  RatFun inverse() const;

  RatFun operator-() const;
  RatFun& operator+=(const RatFun& rhs);
  RatFun& operator-=(const RatFun& rhs);
  RatFun& operator*=(const RatFun& rhs);
  RatFun& operator*=(const Rational& c);
  RatFun& operator/=(const RatFun& rhs);

  friend RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
  friend RatFun operator-(RatFun a, const RatFun& b) { return a -= b; }
  friend RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
  friend RatFun operator*(RatFun a, const Rational& c) { return a *= c; }
  friend RatFun operator*(const Rational& c, RatFun a) { return a *= c; }
  friend RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }

  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }
  friend bool operator<(const RatFun& a, const RatFun& b);

  /// Renders in the expression grammar accepted by parse_ratfun.
  std::string to_string(std::string_view var = "x") const;

 private:
  struct NoCanon {};
  RatFun(Poly num, Poly den, NoCanon) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  Poly num_;
  Poly den_;
};

RatFun pow(const RatFun& f, long e);

}  // namespace varred

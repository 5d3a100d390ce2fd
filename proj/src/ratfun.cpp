#include "varred/ratfun.hpp"

#include <stdexcept>

namespace varred {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  canonicalize();
}

void RatFun::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

Rational RatFun::constant_value() const {
  if (!is_constant()) throw std::domain_error("rational function is not constant");
  return num_.coeff(0);
}

RatFun RatFun::derivative() const {
  if (num_.is_zero() || is_constant()) return {};
  if (den_.is_one()) return RatFun(num_.derivative());
  // (n/d)' = (n' d - n d') / d^2 ; with g = gcd(d, d') a smaller denominator suffices.
  Poly dd = den_.derivative();
  Poly g = gcd(den_, dd);
  Poly d1 = den_ / g;
  Poly numerator = num_.derivative() * d1 - num_ * (dd / g);
  return RatFun(std::move(numerator), d1 * den_);
}

RatFun RatFun::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFun(den_, num_);
}

RatFun RatFun::operator-() const { return RatFun(-num_, den_, NoCanon{}); }

RatFun& RatFun::operator+=(const RatFun& rhs) {
  if (rhs.num_.is_zero()) return *this;
  if (num_.is_zero()) return *this = rhs;
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
    if (num_.is_zero()) {
      den_ = Poly(Rational(1));
      return *this;
    }
    if (!den_.is_one()) canonicalize();
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * rhs.den_ + rhs.num_;
    den_ = rhs.den_;
    return *this;  // already coprime: gcd(p*d + n, d) = gcd(n, d) = 1
  }
  if (rhs.den_.is_one()) {
    num_ += rhs.num_ * den_;
    return *this;
  }
  // Henrici: with g = gcd(d1, d2), b1 = d1/g, b2 = d2/g the sum is
  // (n1 b2 + n2 b1) / (b1 b2 g); only g can share factors with the numerator.
  Poly g = gcd(den_, rhs.den_);
  if (g.is_one()) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
    return *this;
  }
  Poly b1 = den_ / g;
  Poly b2 = rhs.den_ / g;
  Poly n = num_ * b2 + rhs.num_ * b1;
  if (n.is_zero()) return *this = RatFun();
  Poly h = gcd(n, g);
  if (!h.is_one()) {
    n = n / h;
    g = g / h;
  }
  num_ = std::move(n);
  den_ = b1 * b2 * g;
  const Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& rhs) { return *this += -rhs; }

RatFun& RatFun::operator*=(const RatFun& rhs) {
  if (num_.is_zero() || rhs.num_.is_zero()) return *this = RatFun();
  if (rhs.is_constant()) return *this *= rhs.num_.coeff(0);
  if (is_constant()) {
    Rational c = num_.coeff(0);
    *this = rhs;
    return *this *= c;
  }
  // cross-cancel: gcd(n1, d2) and gcd(n2, d1)
  Poly g1 = rhs.den_.is_one() ? Poly(Rational(1)) : gcd(num_, rhs.den_);
  Poly g2 = den_.is_one() ? Poly(Rational(1)) : gcd(rhs.num_, den_);
  Poly n1 = g1.is_one() ? num_ : num_ / g1;
  Poly d2 = g1.is_one() ? rhs.den_ : rhs.den_ / g1;
  Poly n2 = g2.is_one() ? rhs.num_ : rhs.num_ / g2;
  Poly d1 = g2.is_one() ? den_ : den_ / g2;
  num_ = n1 * n2;
  den_ = d1 * d2;
  const Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RatFun& RatFun::operator*=(const Rational& c) {
  if (c == 0) return *this = RatFun();
  num_ *= c;
  return *this;
}

RatFun& RatFun::operator/=(const RatFun& rhs) { return *this *= rhs.inverse(); }

bool operator<(const RatFun& a, const RatFun& b) {
  if (a.den_ != b.den_) return a.den_ < b.den_;
  return a.num_ < b.num_;
}

namespace {

bool is_single_term(const Poly& p) {
  std::size_t nz = 0;
  for (const auto& c : p.coeffs()) nz += (c != 0);
  return nz <= 1;
}

}  // namespace

std::string RatFun::to_string(std::string_view var) const {
  if (den_.is_one()) return num_.to_string(var);
  std::string n = num_.to_string(var);
  if (!is_single_term(num_)) n = "(" + n + ")";
  std::string d = den_.to_string(var);
  // A single monomial whose coefficient is 1 needs no parentheses; anything else
  // (including "c*x^k") does, since '/' binds left to right.
  const bool bare = is_single_term(den_) && den_.leading() == 1;
  if (!bare) d = "(" + d + ")";
  return n + "/" + d;
}

RatFun pow(const RatFun& f, long e) {
  if (e < 0) return pow(f.inverse(), -e);
  return RatFun(pow(f.num(), static_cast<std::size_t>(e)), pow(f.den(), static_cast<std::size_t>(e)));
}

}  // namespace varred

#include "varred/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace varred {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

Poly::Poly(const Rational& c) {
  if (c != 0) coeffs_.push_back(c);
}

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  Poly p;
  if (c == 0) return p;
  p.coeffs_.assign(degree + 1, Rational(0));
  p.coeffs_[degree] = c;
  return p;
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t Poly::degree() const {
  if (coeffs_.empty()) throw std::domain_error("degree of the zero polynomial");
  return coeffs_.size() - 1;
}

Rational Poly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

const Rational& Poly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Poly Poly::monic() const {
  if (is_zero() || leading() == 1) return *this;
  Poly r = *this;
  Rational inv = 1 / leading();
  for (auto& c : r.coeffs_) c *= inv;
  return r;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return Poly(std::move(d));
}

Poly Poly::integral() const {
  if (is_zero()) return {};
  std::vector<Rational> r(coeffs_.size() + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i + 1] = coeffs_[i] / static_cast<unsigned long>(i + 1);
  return Poly(std::move(r));
}

Rational Poly::eval(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Poly Poly::scale_variable(const Rational& c) const {
  Poly r = *this;
  Rational f = 1;
  for (auto& a : r.coeffs_) {
    a *= f;
    f *= c;
  }
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  Rational t;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      mpq_mul(t.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
      r[i + j] += t;
    }
  }
  return Poly(std::move(r));
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& a : coeffs_) a *= c;
  return *this;
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
  for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
    if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
  }
  return false;
}

namespace {

void append_rational(std::ostringstream& os, const Rational& c) {
  if (c.get_den() == 1) {
    os << c.get_num();
  } else {
    os << c.get_num() << "/" << c.get_den();
  }
}

}  // namespace

std::string Poly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      append_rational(os, mag);
      continue;
    }
    if (mag != 1) {
      append_rational(os, mag);
      os << "*";
    }
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.is_zero() || a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> r = a.coeffs();
  const std::size_t db = b.degree();
  std::vector<Rational> q(a.degree() - db + 1, Rational(0));
  const Rational inv_lead = 1 / b.leading();
  Rational t;
  for (std::size_t i = r.size(); i-- > db;) {
    if (r[i] == 0) continue;
    Rational f = r[i] * inv_lead;
    q[i - db] = f;
    for (std::size_t j = 0; j <= db; ++j) {
      mpq_mul(t.get_mpq_t(), f.get_mpq_t(), b.coeffs()[j].get_mpq_t());
      r[i - db + j] -= t;
    }
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly u = a.monic();
  Poly v = b.monic();
  while (!v.is_zero()) {
    Poly r = (u % v).monic();
    u = std::move(v);
    v = std::move(r);
  }
  return u;
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (a / gcd(a, b) * b).monic();
}

ExtendedGcd extended_gcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  Poly s0(Rational(1)), s1;
  Poly t0, t1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {Poly(), Poly(), Poly()};
  Rational inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

std::pair<Poly, Poly> solve_bezout(const Poly& a, const Poly& b, const Poly& c) {
  ExtendedGcd e = extended_gcd(a, b);
  if (!e.g.is_one()) throw std::domain_error("solve_bezout: operands are not coprime");
  Poly s = (e.s * c) % b;
  Poly t = (c - s * a) / b;
  return {s, t};
}

Poly pow(const Poly& p, std::size_t e) {
  Poly result(Rational(1));
  Poly base = p;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

std::vector<Poly> squarefree_decomposition(const Poly& p) {
  std::vector<Poly> out;
  if (p.is_zero() || p.is_constant()) return out;
  Poly f = p.monic();
  Poly df = f.derivative();
  Poly a0 = gcd(f, df);
  Poly b = f / a0;
  Poly c = df / a0;
  Poly d = c - b.derivative();
  while (!b.is_constant()) {
    Poly a = gcd(b, d);
    out.push_back(a);
    b = b / a;
    c = d / a;
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().is_constant()) out.pop_back();
  return out;
}

bool is_squarefree(const Poly& p) {
  if (p.is_zero()) return false;
  return gcd(p, p.derivative()).is_constant();
}

}  // namespace varred

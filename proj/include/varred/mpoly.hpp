#pragma once

#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "varred/error.hpp"
#include "varred/ratfun.hpp"

namespace varred {

/// Sparse multivariate polynomial with coefficients in K (Rational or
/// RatFun). Exponent vectors all have length nvars(); a constant may have
/// nvars() == 0 and is padded on contact with larger polynomials.
template <class K>
class BasicMPoly {
 public:
  using Exponent = std::vector<unsigned>;

  BasicMPoly() = default;
  explicit BasicMPoly(std::size_t nvars) : nvars_(nvars) {}
  BasicMPoly(const K& c) {  // NOLINT(implicit)
    if (!is_zero_coeff(c)) terms_.emplace(Exponent{}, c);
  }
  BasicMPoly(const Integer& c) : BasicMPoly(K(Rational(c))) {}  // NOLINT(implicit)

  static BasicMPoly variable(std::size_t i, std::size_t nvars) {
    BasicMPoly p(nvars);
    Exponent e(nvars, 0);
    e[i] = 1;
    p.terms_.emplace(std::move(e), K(1));
    return p;
  }
  static BasicMPoly monomial(Exponent e, K c) {
    BasicMPoly p(e.size());
    if (!is_zero_coeff(c)) p.terms_.emplace(std::move(e), std::move(c));
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Exponent, K>& terms() const noexcept { return terms_; }

  K coeff(const Exponent& e) const {
    Exponent pe = e;
    pe.resize(std::max(pe.size(), nvars_), 0);
    BasicMPoly self = padded(pe.size());
    auto it = self.terms_.find(pe);
    return it == self.terms_.end() ? K(0) : it->second;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned s = 0;
      for (auto a : e) s += a;
      d = std::max(d, s);
    }
    return d;
  }

  BasicMPoly padded(std::size_t n) const {
    if (n <= nvars_) return *this;
    BasicMPoly r(n);
    for (const auto& [e, c] : terms_) {
      Exponent pe = e;
      pe.resize(n, 0);
      r.terms_.emplace(std::move(pe), c);
    }
    return r;
  }

  BasicMPoly operator-() const {
    BasicMPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend BasicMPoly operator+(const BasicMPoly& a, const BasicMPoly& b) {
    const std::size_t n = std::max(a.nvars_, b.nvars_);
    BasicMPoly r = a.padded(n);
    for (const auto& [e, c] : b.padded(n).terms_) r.add_term(e, c);
    return r;
  }
  friend BasicMPoly operator-(const BasicMPoly& a, const BasicMPoly& b) { return a + (-b); }
  friend BasicMPoly operator*(const BasicMPoly& a, const BasicMPoly& b) {
    const std::size_t n = std::max(a.nvars_, b.nvars_);
    BasicMPoly pa = a.padded(n), pb = b.padded(n);
    BasicMPoly r(n);
    for (const auto& [ea, ca] : pa.terms_)
      for (const auto& [eb, cb] : pb.terms_) {
        Exponent e(n);
        for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  BasicMPoly scaled(const K& s) const {
    BasicMPoly r(nvars_);
    if (is_zero_coeff(s)) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }

  friend bool operator==(const BasicMPoly& a, const BasicMPoly& b) {
    const std::size_t n = std::max(a.nvars_, b.nvars_);
    return a.padded(n).terms_ == b.padded(n).terms_;
  }
  friend bool operator!=(const BasicMPoly& a, const BasicMPoly& b) { return !(a == b); }

  /// Partial derivative with respect to variable i.
  BasicMPoly derivative(std::size_t i) const {
    BasicMPoly r(nvars_);
    if (i >= nvars_) return r;
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      --d[i];
      r.add_term(d, c * K(Rational(e[i])));
    }
    return r;
  }

  /// Substitutes point[i] for variable i.
  template <class V>
  V eval(const std::vector<V>& point) const {
    if (point.size() < nvars_) throw PreconditionError("MPoly::eval: too few values");
    std::vector<std::vector<V>> powers(nvars_);
    V sum(0);
    for (const auto& [e, c] : terms_) {
      V t = V(c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(V(1));
        while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
        t = t * pw[e[i]];
      }
      sum = sum + t;
    }
    return sum;
  }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string cs = coeff_string(c);
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs = cs.substr(1);
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names.at(i);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        os << cs;
      } else if (cs == "1") {
        os << mono;
      } else {
        os << cs << "*" << mono;
      }
    }
    return os.str();
  }

 private:
  static bool is_zero_coeff(const Rational& c) { return sgn(c) == 0; }
  static bool is_zero_coeff(const RatFun& c) { return c.is_zero(); }
  static std::string coeff_string(const Rational& c) { return c.get_str(); }
  static std::string coeff_string(const RatFun& c) {
    std::string s = c.to_string();
    if (c.is_constant()) return s;
    return "(" + s + ")";
  }

  void add_term(const Exponent& e, const K& c) {
    if (is_zero_coeff(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (is_zero_coeff(it->second)) terms_.erase(it);
  }

  std::size_t nvars_ = 0;
  std::map<Exponent, K> terms_;
};

using MPoly = BasicMPoly<Rational>;

template <class K>
BasicMPoly<K> pow(const BasicMPoly<K>& p, unsigned long e) {
  BasicMPoly<K> r(K(1));
  for (unsigned long i = 0; i < e; ++i) r = r * p;
  return r;
}

/// Parses a polynomial in the given variable names; division is allowed only
/// by nonzero constants.
MPoly parse_mpoly(std::string_view text, const std::vector<std::string>& names);

/// q1..qn, p1..pn
std::vector<std::string> canonical_names(std::size_t n);

}  // namespace varred

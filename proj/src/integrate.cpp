#include "varred/integrate.hpp"

#include <algorithm>

#include "varred/factor.hpp"
#include "varred/matrix.hpp"

namespace varred {

RatFun PFDecomp::recombine() const {
  RatFun sum(polynomial_part);
  for (const auto& t : terms) sum += RatFun(t.numerator, pow(t.factor, t.multiplicity));
  return sum;
}

PFDecomp partial_fractions(const RatFun& f) {
  PFDecomp out;
  auto [poly, rem] = divmod(f.num(), f.den());
  out.polynomial_part = poly;
  if (rem.is_zero()) return out;
  Poly num = rem;
  Poly den = f.den();
  for (const auto& fp : factor(f.den())) {
    Poly q = pow(fp.factor, fp.multiplicity);
    Poly rest = den / q;
    Poly s;
    if (rest.is_constant()) {
      s = num * (1 / rest.leading());
      num = Poly();
    } else {
      auto [s1, t1] = solve_bezout(rest, q, num);
      s = s1;
      num = t1;
    }
    den = rest;
    // p-adic expansion s = sum c_j p^j, term c_j / p^(k-j)
    std::vector<PFTerm> local;
    for (std::size_t j = 0; j < fp.multiplicity && !s.is_zero(); ++j) {
      auto [qq, c] = divmod(s, fp.factor);
      if (!c.is_zero()) local.push_back({fp.factor, fp.multiplicity - j, c});
      s = qq;
    }
    std::reverse(local.begin(), local.end());
    out.terms.insert(out.terms.end(), local.begin(), local.end());
  }
  return out;
}

HermiteSplit hermite_split(const RatFun& f) {
  HermiteSplit out;
  if (f.is_zero()) return out;
  auto [poly, A] = divmod(f.num(), f.den());
  const Poly& D = f.den();
  RatFun g(poly.integral());
  Poly Dminus = gcd(D, D.derivative());
  Poly Dstar = D / Dminus;
  while (!Dminus.is_constant() && !A.is_zero()) {
    Poly dDminus = Dminus.derivative();
    Poly D2 = gcd(Dminus, dDminus);
    Poly Dminus_star = Dminus / D2;
    Poly a = -(Dstar * dDminus / Dminus);
    auto [B, C] = solve_bezout(a, Dminus_star, A);
    A = C - B.derivative() * (Dstar / Dminus_star);
    g += RatFun(B, Dminus);
    Dminus = D2;
  }
  out.R = g;
  out.L = A.is_zero() ? RatFun() : RatFun(A, Dstar);
  return out;
}

std::vector<Poly> pole_factors(const RatFun& f) {
  std::vector<Poly> out;
  if (f.den().is_constant()) return out;
  for (auto& fp : factor(f.den())) out.push_back(fp.factor);
  return out;
}

long degree_at_infinity(const RatFun& f) {
  return static_cast<long>(f.num().degree()) - static_cast<long>(f.den().degree());
}

std::size_t pole_order(const RatFun& f, const Poly& p) {
  std::size_t k = 0;
  Poly d = f.den();
  while (!d.is_constant()) {
    auto [q, r] = divmod(d, p);
    if (!r.is_zero()) break;
    d = q;
    ++k;
  }
  return k;
}

namespace {

// Residue of gamma at the roots of the irreducible p when it is the same
// rational number at every root (gamma has a simple pole at p).
std::optional<Rational> rational_residue(const RatFun& gamma, const Poly& p) {
  Poly rest = gamma.den() / p;
  Poly w = rest * p.derivative();
  // residue polynomial r = num * w^{-1} mod p
  ExtendedGcd e = extended_gcd(w % p, p);
  if (!e.g.is_one()) return std::nullopt;
  Poly r = (gamma.num() * e.s) % p;
  if (r.is_zero()) return Rational(0);
  if (!r.is_constant()) return std::nullopt;
  return r.coeff(0);
}

}  // namespace

std::optional<RatFun> solve_first_order_rational(const RatFun& gamma, const RatFun& beta) {
  if (beta.is_zero()) return RatFun();
  if (gamma.is_zero()) {
    HermiteSplit h = hermite_split(beta);
    if (!h.L.is_zero()) return std::nullopt;
    return h.R;
  }

  // denominator bound from local analysis at each candidate pole
  std::vector<Poly> primes = pole_factors(beta);
  for (auto& p : pole_factors(gamma))
    if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
  Poly Dg(Rational(1));
  for (const auto& p : primes) {
    const long e = static_cast<long>(pole_order(gamma, p));
    const long b = static_cast<long>(pole_order(beta, p));
    long k = 0;
    if (e == 0) {
      k = b - 1;
    } else if (e >= 2) {
      k = b - e;
    } else {
      k = b - 1;
      auto rho = rational_residue(gamma, p);
      if (rho && rho->get_den() == 1 && -*rho > k) k = -rho->get_num().get_si();
    }
    if (k > 0) Dg *= pow(p, static_cast<std::size_t>(k));
  }

  // degree bound at infinity
  const long dgam = degree_at_infinity(gamma);
  const long dbeta = degree_at_infinity(beta);
  long dg = std::max(dbeta - dgam, dbeta + 1);
  if (dgam == -1) {
    Rational c = gamma.num().leading() / gamma.den().leading();
    if (c.get_den() == 1 && c > dg) dg = c.get_num().get_si();
  }
  const long dN = dg + static_cast<long>(Dg.degree());
  if (dN < 0) return std::nullopt;

  // linear system: sum n_j E_j = beta with E_j = (x^j/Dg)' - gamma x^j/Dg.
  // Multiplied by W = Dg^2 den(gamma) den(beta):
  //   E_j W = j x^(j-1) A - x^j B,  A = den(beta) den(gamma) Dg,
  //   B = den(beta) (den(gamma) Dg' + num(gamma) Dg)
  const std::size_t nunk = static_cast<std::size_t>(dN) + 1;
  const Poly A = beta.den() * gamma.den() * Dg;
  const Poly B = beta.den() * (gamma.den() * Dg.derivative() + gamma.num() * Dg);
  const Poly rhs_poly = beta.num() * Dg * Dg * gamma.den();
  std::vector<Poly> cols;
  std::size_t rows = rhs_poly.size();
  for (std::size_t j = 0; j < nunk; ++j) {
    Poly P = -(Poly::monomial(1, j) * B);
    if (j > 0) P += Poly::monomial(Rational(static_cast<long>(j)), j - 1) * A;
    rows = std::max(rows, P.size());
    cols.push_back(std::move(P));
  }
  ConstMat M(rows, nunk);
  QVector b(rows, Rational(0));
  for (std::size_t j = 0; j < nunk; ++j)
    for (std::size_t i = 0; i < rows; ++i) M(i, j) = cols[j].coeff(i);
  for (std::size_t i = 0; i < rows; ++i) b[i] = rhs_poly.coeff(i);
  auto sol = solve_linear(M, b);
  if (!sol) return std::nullopt;
  RatFun g(Poly(*sol), Dg);
  return g;
}

}  // namespace varred

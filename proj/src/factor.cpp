#include "varred/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>

namespace varred {

namespace {

// ---------------------------------------------------------------------------
// Polynomials over F_p, p < 2^31, ascending coefficients, no trailing zeros.

using u64 = std::uint64_t;
using FpPoly = std::vector<u64>;

struct Fp {
  u64 p;

  u64 mul(u64 a, u64 b) const { return (a * b) % p; }
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }

  static void trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }

  FpPoly monic(FpPoly f) const {
    trim(f);
    if (f.empty() || f.back() == 1) return f;
    u64 iv = inv(f.back());
    for (auto& c : f) c = mul(c, iv);
    return f;
  }

  FpPoly sub(const FpPoly& a, const FpPoly& b) const {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
    trim(r);
    return r;
  }

  FpPoly mul(const FpPoly& a, const FpPoly& b) const {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
  }

  // returns {q, r}
  std::pair<FpPoly, FpPoly> divmod(FpPoly a, const FpPoly& b) const {
    if (b.empty()) throw std::domain_error("F_p division by zero");
    trim(a);
    if (a.size() < b.size()) return {FpPoly{}, a};
    const std::size_t db = b.size() - 1;
    FpPoly q(a.size() - db, 0);
    const u64 il = inv(b.back());
    for (std::size_t i = a.size(); i-- > db;) {
      if (!a[i]) continue;
      u64 f = mul(a[i], il);
      q[i - db] = f;
      for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = sub(a[i - db + j], mul(f, b[j]));
    }
    a.resize(db);
    trim(a);
    trim(q);
    return {q, a};
  }

  FpPoly mod(const FpPoly& a, const FpPoly& b) const { return divmod(a, b).second; }

  FpPoly gcd(FpPoly a, FpPoly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      FpPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  // s*a + t*b = 1 (requires coprime); returns {s, t}
  std::pair<FpPoly, FpPoly> bezout(const FpPoly& a, const FpPoly& b) const {
    FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      FpPoly s2 = sub(s0, mul(q, s1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      FpPoly t2 = sub(t0, mul(q, t1));
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.size() != 1) throw std::logic_error("bezout: operands not coprime mod p");
    u64 iv = inv(r0[0]);
    for (auto& c : s0) c = mul(c, iv);
    for (auto& c : t0) c = mul(c, iv);
    return {s0, t0};
  }

  FpPoly derivative(const FpPoly& f) const {
    if (f.size() <= 1) return {};
    FpPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mul(f[i], i % p);
    trim(d);
    return d;
  }

  FpPoly powmod(FpPoly base, const Integer& e, const FpPoly& m) const {
    FpPoly r{1};
    base = mod(base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = mod(mul(r, r), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, base), m);
    }
    return r;
  }
};

// Distinct-degree then equal-degree (Cantor–Zassenhaus) factorization of a
// squarefree monic polynomial over F_p, p odd.
std::vector<FpPoly> factor_mod_p(const Fp& F, FpPoly f, std::mt19937_64& rng) {
  std::vector<FpPoly> out;
  std::vector<std::pair<FpPoly, std::size_t>> ddf;
  FpPoly h{0, 1};
  const FpPoly xpoly{0, 1};
  for (std::size_t d = 1; f.size() > 1 && 2 * d <= f.size() - 1; ++d) {
    h = F.powmod(h, Integer(static_cast<unsigned long>(F.p)), f);
    FpPoly g = F.gcd(F.sub(h, xpoly), f);
    if (g.size() > 1) {
      ddf.emplace_back(g, d);
      f = F.divmod(f, g).first;
      h = F.mod(h, f);
    }
  }
  if (f.size() > 1) ddf.emplace_back(f, f.size() - 1);

  std::function<void(const FpPoly&, std::size_t)> split = [&](const FpPoly& g, std::size_t d) {
    if (g.size() - 1 == d) {
      out.push_back(g);
      return;
    }
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), F.p, d);
    e = (e - 1) / 2;
    std::uniform_int_distribution<u64> dist(0, F.p - 1);
    while (true) {
      FpPoly a(g.size() - 1);
      for (auto& c : a) c = dist(rng);
      Fp::trim(a);
      if (a.size() <= 1) continue;
      FpPoly b = F.powmod(a, e, g);
      FpPoly bm1 = F.sub(b, FpPoly{1});
      FpPoly c = F.gcd(bm1, g);
      if (c.size() > 1 && c.size() < g.size()) {
        split(c, d);
        split(F.divmod(g, c).first, d);
        return;
      }
    }
  };
  for (auto& [g, d] : ddf) split(g, d);
  return out;
}

// ---------------------------------------------------------------------------
// Integer-coefficient helpers.

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Integer modpos(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (auto& c : r) c = modpos(c, m);
  ztrim(r);
  return r;
}

ZPoly from_fp(const FpPoly& f) {
  ZPoly r;
  r.reserve(f.size());
  for (u64 c : f) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

FpPoly to_fp(const ZPoly& f, u64 p) {
  FpPoly r(f.size());
  Integer P(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = modpos(f[i], P).get_ui();
  Fp::trim(r);
  return r;
}

// Lift F ≡ g*h (mod p), g and h monic and coprime mod p, to modulus M = p^k.
// F is monic with coefficients reduced mod M.
std::pair<ZPoly, ZPoly> hensel_lift(const Fp& F, const ZPoly& target, const FpPoly& g0, const FpPoly& h0,
                                    const Integer& M) {
  auto [s, t] = F.bezout(g0, h0);
  ZPoly g = from_fp(g0), h = from_fp(h0);
  Integer q(static_cast<unsigned long>(F.p));
  while (q < M) {
    ZPoly gh = zmul_mod(g, h, M);
    ZPoly e(std::max(target.size(), gh.size()), Integer(0));
    for (std::size_t i = 0; i < target.size(); ++i) e[i] += target[i];
    for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    for (auto& c : e) {
      c = modpos(c, M);
      c /= q;  // exact: e ≡ 0 mod q
    }
    ztrim(e);
    FpPoly ep = to_fp(e, F.p);
    // tau*h0 + sigma*g0 ≡ ep with deg tau < deg g0
    FpPoly tau = F.mod(F.mul(t, ep), g0);
    FpPoly rest = F.sub(ep, F.mul(tau, h0));
    auto [sigma, rem] = F.divmod(rest, g0);
    if (!rem.empty()) throw std::logic_error("hensel_lift: inexact division");
    ZPoly tz = from_fp(tau), sz = from_fp(sigma);
    if (g.size() < tz.size()) g.resize(tz.size(), Integer(0));
    for (std::size_t i = 0; i < tz.size(); ++i) g[i] = modpos(g[i] + q * tz[i], M);
    if (h.size() < sz.size()) h.resize(sz.size(), Integer(0));
    for (std::size_t i = 0; i < sz.size(); ++i) h[i] = modpos(h[i] + q * sz[i], M);
    q *= F.p;
  }
  for (auto& c : g) c = modpos(c, M);
  for (auto& c : h) c = modpos(c, M);
  ztrim(g);
  ztrim(h);
  return {g, h};
}

Poly to_poly(const ZPoly& f) {
  std::vector<Rational> c;
  c.reserve(f.size());
  for (const auto& a : f) c.emplace_back(a);
  return Poly(std::move(c));
}

bool is_probable_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Factor a squarefree primitive integer polynomial of degree >= 2.
std::vector<Poly> zassenhaus(const ZPoly& f) {
  const std::size_t n = f.size() - 1;
  const Integer lc = f.back();

  // pick the prime (among the first few good ones) giving the fewest factors
  std::mt19937_64 rng(0x5eed1234ULL);
  std::vector<FpPoly> best;
  u64 best_p = 0;
  int good = 0;
  for (u64 p = 3; good < 4 && p < 100000; p += 2) {
    if (!is_probable_prime(p)) continue;
    if (modpos(lc, Integer(static_cast<unsigned long>(p))) == 0) continue;
    Fp F{p};
    FpPoly fp = to_fp(f, p);
    if (fp.size() != f.size()) continue;
    FpPoly mf = F.monic(fp);
    if (F.gcd(mf, F.derivative(mf)).size() != 1) continue;
    ++good;
    auto facs = factor_mod_p(F, mf, rng);
    if (best_p == 0 || facs.size() < best.size()) {
      best = std::move(facs);
      best_p = p;
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw std::logic_error("zassenhaus: no good prime found");
  if (best.size() == 1) return {to_poly(f).monic()};

  // coefficient bound B for lc * (any factor): 2^n * (n+1) * max|f_i| * |lc|
  Integer maxc = 0;
  for (const auto& c : f) maxc = std::max(maxc, Integer(abs(c)));
  Integer bound = Integer(1) << static_cast<unsigned>(n);
  bound *= Integer(static_cast<unsigned long>(n + 1)) * maxc * abs(lc);
  bound *= 2;
  const Fp F{best_p};
  Integer M(static_cast<unsigned long>(best_p));
  while (M <= bound) M *= best_p;

  // monic image of f mod M
  Integer lc_inv;
  if (mpz_invert(lc_inv.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t()) == 0)
    throw std::logic_error("zassenhaus: leading coefficient not invertible");
  ZPoly target(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) target[i] = modpos(f[i] * lc_inv, M);

  std::vector<ZPoly> lifted;
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    FpPoly rest{1};
    for (std::size_t j = i + 1; j < best.size(); ++j) rest = F.mul(rest, best[j]);
    auto [g, h] = hensel_lift(F, target, best[i], rest, M);
    lifted.push_back(std::move(g));
    target = std::move(h);
  }
  lifted.push_back(std::move(target));

  // subset recombination
  std::vector<Poly> found;
  ZPoly current = f;
  std::vector<std::size_t> alive(lifted.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  const Integer half = M / 2;
  std::size_t s = 1;
  while (2 * s <= alive.size()) {
    bool hit = false;
    std::vector<std::size_t> sel(s);
    for (std::size_t i = 0; i < s; ++i) sel[i] = i;
    while (true) {
      Integer clc = current.back();
      ZPoly prod{modpos(clc, M)};
      for (std::size_t i : sel) prod = zmul_mod(prod, lifted[alive[i]], M);
      for (auto& c : prod) {
        if (c > half) c -= M;
      }
      Poly cand = to_poly(prod).monic();
      auto [q, r] = divmod(to_poly(current), cand);
      if (r.is_zero()) {
        found.push_back(cand);
        ZPoly qi;
        auto qc = primitive_integer_coeffs(q);
        current = qc;
        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < alive.size(); ++i)
          if (std::find(sel.begin(), sel.end(), i) == sel.end()) next.push_back(alive[i]);
        alive = std::move(next);
        hit = true;
        break;
      }
      // next combination
      std::size_t k = s;
      while (k > 0 && sel[k - 1] == alive.size() - s + k - 1) --k;
      if (k == 0) break;
      ++sel[k - 1];
      for (std::size_t j = k; j < s; ++j) sel[j] = sel[j - 1] + 1;
    }
    if (!hit) ++s;
  }
  if (current.size() > 1) found.push_back(to_poly(current).monic());
  return found;
}

}  // namespace

std::vector<Integer> primitive_integer_coeffs(const Poly& p) {
  if (p.is_zero()) return {};
  Integer den = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(p.size());
  Integer content = 0;
  for (const auto& c : p.coeffs()) {
    Integer v = c.get_num() * (den / c.get_den());
    out.push_back(v);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  if (out.back() < 0) content = -content;
  for (auto& v : out) v /= content;
  return out;
}

std::vector<Poly> factor_squarefree(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("factor of zero polynomial");
  if (p.is_constant()) return {};
  std::vector<Poly> out;
  Poly f = p.monic();
  // pull out the factor x first; it keeps the modular images simpler
  if (f.coeff(0) == 0) {
    out.push_back(Poly::x());
    f = f / Poly::x();
  }
  if (f.is_constant()) return out;
  if (f.degree() == 1) {
    out.push_back(f);
  } else {
    auto z = primitive_integer_coeffs(f);
    auto facs = zassenhaus(z);
    out.insert(out.end(), facs.begin(), facs.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FactorPower> factor(const Poly& p) {
  std::vector<FactorPower> out;
  auto sqf = squarefree_decomposition(p);
  for (std::size_t i = 0; i < sqf.size(); ++i) {
    if (sqf[i].is_constant()) continue;
    for (auto& f : factor_squarefree(sqf[i])) out.push_back({std::move(f), i + 1});
  }
  std::sort(out.begin(), out.end(), [](const FactorPower& a, const FactorPower& b) { return a.factor < b.factor; });
  return out;
}

}  // namespace varred

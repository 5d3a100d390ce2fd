#include "support.hpp"

#include "varred/expr.hpp"

namespace testing {

Poly Rng::parse_factor(const std::string& s) { return parse_ratfun(s).num(); }

namespace {

using UPoly = BasicMPoly<RatFun>;

// X_i(phi + u) with every product expanded
UPoly substitute(const MPoly& X, const std::vector<RatFun>& phi) {
  const std::size_t N = phi.size();
  std::vector<UPoly> shifted;
  for (std::size_t v = 0; v < N; ++v) shifted.push_back(UPoly(phi[v]).padded(N) + UPoly::variable(v, N));
  UPoly sum(N);
  const MPoly Xp = X.padded(N);
  for (const auto& [e, c] : Xp.terms()) {
    UPoly t = UPoly(RatFun(c)).padded(N);
    for (std::size_t v = 0; v < N; ++v) t = t * pow(shifted[v], e[v]);
    sum = sum + t;
  }
  return sum;
}

}  // namespace

RatMat lve_by_substitution(const HamiltonianSpec& spec, std::size_t m) {
  const std::size_t N = 2 * spec.n;
  auto X = hamiltonian_vector_field(spec.H, spec.n);
  std::vector<UPoly> F;
  for (std::size_t i = 0; i < N; ++i) {
    UPoly f = substitute(X[i], spec.solution.phi);
    f = f - UPoly(X[i].eval(spec.solution.phi)).padded(N);
    F.push_back(f);
  }

  std::vector<std::vector<unsigned>> state;
  for (std::size_t k = m; k >= 1; --k) {
    SymIndex idx(N, k);
    for (const auto& a : idx.monomials()) state.push_back(a);
  }
  auto index = [&](const std::vector<unsigned>& a) -> std::optional<std::size_t> {
    for (std::size_t s = 0; s < state.size(); ++s)
      if (state[s] == a) return s;
    return std::nullopt;
  };

  const RatFun inv_sigma = spec.solution.sigma.inverse();
  RatMat A(state.size(), state.size());
  for (std::size_t r = 0; r < state.size(); ++r) {
    const auto& alpha = state[r];
    UPoly d(N);
    for (std::size_t i = 0; i < N; ++i) {
      if (alpha[i] == 0) continue;
      std::vector<unsigned> lower = alpha;
      --lower[i];
      d = d + UPoly::monomial(lower, RatFun(Rational(alpha[i]))) * F[i];
    }
    for (const auto& [e, c] : d.terms()) {
      unsigned deg = 0;
      for (auto v : e) deg += v;
      if (deg == 0 || deg > m) continue;
      A(r, *index(e)) += c * inv_sigma;
    }
  }
  return A;
}

std::vector<ConstMat> bracket_words(const std::vector<ConstMat>& gens, std::size_t depth) {
  std::vector<ConstMat> all = gens, level = gens;
  for (std::size_t k = 2; k <= depth; ++k) {
    std::vector<ConstMat> next;
    for (const auto& g : gens)
      for (const auto& w : level) next.push_back(bracket(g, w));
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

ConstMat exp_nilpotent_series(const ConstMat& N) {
  const std::size_t n = N.rows();
  ConstMat sum = ConstMat::identity(n), term = ConstMat::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = (term * N).scaled(Rational(1, static_cast<long>(k)));
    sum += term;
  }
  return sum;
}

}  // namespace testing

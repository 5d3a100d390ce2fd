#include "varred/varequations.hpp"

namespace varred {

std::vector<MPoly> hamiltonian_vector_field(const MPoly& H, std::size_t n) {
  MPoly h = H.padded(2 * n);
  std::vector<MPoly> X(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    X[i] = h.derivative(n + i).padded(2 * n);
    X[n + i] = (-h.derivative(i)).padded(2 * n);
  }
  return X;
}

MPoly poisson_bracket(const MPoly& f, const MPoly& g, std::size_t n) {
  MPoly F = f.padded(2 * n), G = g.padded(2 * n);
  MPoly r(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    r = r + F.derivative(i) * G.derivative(n + i) - F.derivative(n + i) * G.derivative(i);
  return r;
}

std::vector<std::size_t> solution_residual_failures(const MPoly& H, std::size_t n, const ParticularSolution& sol) {
  std::vector<std::size_t> bad;
  auto X = hamiltonian_vector_field(H, n);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    RatFun lhs = sol.sigma * sol.phi[i].derivative();
    RatFun rhs = X[i].eval(sol.phi);
    if (lhs != rhs) bad.push_back(i);
  }
  return bad;
}

HamiltonianSpec HamiltonianSpec::make(std::size_t n, MPoly H, ParticularSolution sol, std::string variable) {
  if (n == 0) throw PreconditionError("number of degrees of freedom must be positive");
  if (H.nvars() > 2 * n) throw PreconditionError("Hamiltonian uses more than 2n variables");
  if (sol.phi.size() != 2 * n) throw PreconditionError("solution must have 2n components");
  if (sol.sigma.is_zero()) throw PreconditionError("degenerate solution: sigma = 0");
  HamiltonianSpec s;
  s.n = n;
  s.H = H.padded(2 * n);
  s.solution = std::move(sol);
  s.variable = std::move(variable);
  auto bad = solution_residual_failures(s.H, n, s.solution);
  if (!bad.empty()) {
    auto names = canonical_names(n);
    std::string msg = "particular solution check failed for component";
    msg += bad.size() > 1 ? "s" : "";
    for (std::size_t k = 0; k < bad.size(); ++k) msg += (k ? ", " : " ") + names[bad[k]];
    throw PreconditionError(msg);
  }
  return s;
}

RatMat first_variational(const HamiltonianSpec& spec) {
  const std::size_t N = 2 * spec.n;
  auto X = hamiltonian_vector_field(spec.H, spec.n);
  RatFun inv_sigma = spec.solution.sigma.inverse();
  RatMat A(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      MPoly d = X[i].derivative(j);
      if (d.is_zero()) continue;
      A(i, j) = d.eval(spec.solution.phi) * inv_sigma;
    }
  return A;
}

std::size_t lve_dimension(std::size_t N, std::size_t m) {
  if (N == 0 || m == 0) throw PreconditionError("lve_dimension: N and m must be positive");
  Integer s = 0;
  for (std::size_t i = 1; i <= m; ++i) s += binomial(N + i - 1, N - 1);
  return s.get_ui();
}

std::vector<BlockSystem> build_lve(const HamiltonianSpec& spec, std::size_t m) {
  if (m == 0) throw PreconditionError("build_lve: order must be positive");
  if (spec.solution.sigma.is_zero()) throw PreconditionError("degenerate solution: sigma = 0");
  const std::size_t N = 2 * spec.n;
  auto X = hamiltonian_vector_field(spec.H, spec.n);
  RatFun inv_sigma = spec.solution.sigma.inverse();

  // state ordering: degree m, m-1, ..., 1
  std::vector<SymIndex> degs;
  std::vector<std::size_t> offset(m + 1, 0);
  for (std::size_t k = 1; k <= m; ++k) degs.emplace_back(N, k);
  const std::size_t D = lve_dimension(N, m);
  {
    std::size_t off = 0;
    for (std::size_t k = m; k >= 1; --k) {
      offset[k] = off;
      off += degs[k - 1].size();
    }
  }
  auto pos = [&](const std::vector<unsigned>& a) {
    unsigned k = 0;
    for (auto v : a) k += v;
    return offset[k] + degs[k - 1].index_of(a);
  };

  // Taylor coefficients c[i][beta] = (d^beta X_i)(phi) / beta!, 1 <= |beta| <= m
  struct Coef {
    std::vector<unsigned> beta;
    RatFun value;
  };
  std::vector<std::vector<Coef>> taylor(N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 1; k <= m; ++k) {
      for (const auto& beta : degs[k - 1].monomials()) {
        MPoly d = X[i];
        Integer fact = 1;
        for (std::size_t v = 0; v < N && !d.is_zero(); ++v)
          for (unsigned e = 0; e < beta[v]; ++e) {
            d = d.derivative(v);
            fact *= (e + 1);
          }
        if (d.is_zero()) continue;
        RatFun val = d.eval(spec.solution.phi) * (inv_sigma * Rational(1 / Rational(fact)));
        if (!val.is_zero()) taylor[i].push_back({beta, val});
      }
    }
  }

  RatMat A(D, D);
  for (std::size_t k = m; k >= 1; --k) {
    for (const auto& alpha : degs[k - 1].monomials()) {
      const std::size_t row = pos(alpha);
      for (std::size_t i = 0; i < N; ++i) {
        if (alpha[i] == 0) continue;
        for (const auto& c : taylor[i]) {
          unsigned bdeg = 0;
          for (auto v : c.beta) bdeg += v;
          if (k - 1 + bdeg > m) continue;
          std::vector<unsigned> gamma = alpha;
          --gamma[i];
          for (std::size_t v = 0; v < N; ++v) gamma[v] += c.beta[v];
          A(row, pos(gamma)) += c.value * Rational(alpha[i]);
        }
      }
    }
  }

  std::vector<BlockSystem> out;
  for (std::size_t k = 1; k <= m; ++k) {
    BlockSystem b;
    b.order = k;
    const std::size_t dk = lve_dimension(N, k);
    b.matrix = A.block(D - dk, D - dk, dk, dk);
    b.top = degs[k - 1].size();
    b.tail = dk - b.top;
    b.gauge = GaugeMatrix::identity(dk);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace varred

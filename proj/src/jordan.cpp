#include "varred/jordan.hpp"

#include <algorithm>

#include "varred/factor.hpp"

namespace varred {

std::vector<std::size_t> JordanChains::block_sizes() const {
  std::vector<std::size_t> s;
  for (const auto& c : chains) s.push_back(c.size());
  return s;
}

ConstMat JordanChains::change_of_basis() const {
  ConstMat T(operator_dim, operator_dim);
  std::size_t col = 0;
  for (const auto& c : chains)
    for (const auto& v : c) {
      for (std::size_t i = 0; i < operator_dim; ++i) T(i, col) = v[i];
      ++col;
    }
  return T;
}

ConstMat nilpotent_jordan_matrix(const std::vector<std::size_t>& block_sizes) {
  std::size_t n = 0;
  for (auto s : block_sizes) n += s;
  ConstMat J(n, n);
  std::size_t off = 0;
  for (auto s : block_sizes) {
    for (std::size_t k = 0; k + 1 < s; ++k) J(off + k, off + k + 1) = 1;
    off += s;
  }
  return J;
}

namespace {

std::size_t first_nonzero(const QVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) return i;
  return v.size();
}

}  // namespace

JordanChains nilpotent_jordan_chains(const ConstMat& N) {
  if (!N.is_square()) throw PreconditionError("nilpotent_jordan_chains: matrix not square");
  const std::size_t n = N.rows();
  JordanChains out;
  out.operator_dim = n;
  if (n == 0) return out;

  // kernels of N^p until everything is killed
  std::vector<std::vector<QVector>> K{{}};
  ConstMat power = N;
  std::size_t prev_rank = n;
  for (std::size_t p = 1;; ++p) {
    std::size_t r = rank(power);
    if (r == 0) {
      K.push_back(nullspace(power));
      break;
    }
    if (r == prev_rank)
      throw PreconditionError("not nilpotent: rank of N^" + std::to_string(p - 1) + " stabilizes at " +
                              std::to_string(r));
    K.push_back(nullspace(power));
    prev_rank = r;
    power = power * N;
  }

  const std::size_t top = K.size() - 1;
  for (std::size_t j = top; j >= 1; --j) {
    SpanTracker W(n);
    for (const auto& v : K[j - 1]) W.add(v);
    for (const auto& ch : out.chains)
      if (ch.size() > j) W.add(ch[j - 1]);
    std::size_t first_new = out.chains.size();
    for (const auto& v : K[j]) {
      if (!W.add(v)) continue;
      std::vector<QVector> c(j);
      c[j - 1] = v;
      for (std::size_t k = j - 1; k-- > 0;) c[k] = mat_vec(N, c[k + 1]);
      out.chains.push_back(std::move(c));
    }
    std::stable_sort(out.chains.begin() + static_cast<std::ptrdiff_t>(first_new), out.chains.end(),
                     [](const auto& a, const auto& b) { return first_nonzero(a[0]) < first_nonzero(b[0]); });
  }
  return out;
}

Poly characteristic_polynomial(const ConstMat& M) {
  if (!M.is_square()) throw PreconditionError("characteristic_polynomial: matrix not square");
  const std::size_t n = M.rows();
  // Faddeev-LeVerrier
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  ConstMat Mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Mk = M * Mk;
    for (std::size_t i = 0; i < n; ++i) Mk(i, i) += c[n - k + 1];
    ConstMat AM = M * Mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
    c[n - k] = -tr / static_cast<unsigned long>(k);
  }
  return Poly(std::move(c));
}

std::vector<EigenChains> rational_jordan_chains(const ConstMat& M) {
  if (!M.is_square()) throw PreconditionError("rational_jordan_chains: matrix not square");
  const std::size_t n = M.rows();
  std::vector<EigenChains> out;
  if (n == 0) return out;
  Poly chi = characteristic_polynomial(M);
  std::vector<std::pair<Rational, std::size_t>> roots;
  for (const auto& fp : factor(chi)) {
    if (fp.factor.degree() != 1)
      throw UnsupportedError("constant field too small: eigenvalues outside Q (factor " + fp.factor.to_string() +
                             " of the characteristic polynomial)");
    roots.emplace_back(-fp.factor.coeff(0), fp.multiplicity);
  }
  std::sort(roots.begin(), roots.end());
  for (const auto& [lambda, mult] : roots) {
    ConstMat S = M;
    for (std::size_t i = 0; i < n; ++i) S(i, i) -= lambda;
    ConstMat Sp = S;
    for (std::size_t k = 1; k < mult; ++k) Sp = Sp * S;
    std::vector<QVector> G = nullspace(Sp);
    SpanTracker tr(n);
    for (const auto& g : G) tr.add(g);
    ConstMat R(G.size(), G.size());
    for (std::size_t j = 0; j < G.size(); ++j) {
      auto c = tr.coordinates(mat_vec(S, G[j]));
      if (!c) throw std::logic_error("generalized eigenspace not invariant");
      for (std::size_t i = 0; i < G.size(); ++i) R(i, j) = (*c)[i];
    }
    JordanChains local = nilpotent_jordan_chains(R);
    JordanChains amb;
    amb.operator_dim = n;
    for (const auto& ch : local.chains) {
      std::vector<QVector> c;
      for (const auto& v : ch) {
        QVector w(n, Rational(0));
        for (std::size_t i = 0; i < G.size(); ++i)
          if (sgn(v[i]) != 0)
            for (std::size_t r = 0; r < n; ++r) w[r] += v[i] * G[i][r];
        c.push_back(std::move(w));
      }
      amb.chains.push_back(std::move(c));
    }
    out.push_back({lambda, std::move(amb)});
  }
  return out;
}

}  // namespace varred

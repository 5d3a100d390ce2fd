#include "varred/gauge.hpp"

#include "varred/lie.hpp"

namespace varred {

GaugeMatrix::GaugeMatrix(RatMat P) : P_(std::move(P)) {
  if (!P_.is_square()) throw PreconditionError("gauge matrix must be square");
  P_inv_ = inverse(P_);
}

GaugeMatrix::GaugeMatrix(RatMat P, RatMat P_inv) : P_(std::move(P)), P_inv_(std::move(P_inv)) {
  if (!P_.is_square() || P_inv_.rows() != P_.rows() || P_inv_.cols() != P_.cols())
    throw PreconditionError("gauge matrix and inverse have mismatched sizes");
  if (P_ * P_inv_ != RatMat::identity(P_.rows())) throw PreconditionError("supplied inverse is not the inverse");
}

GaugeMatrix GaugeMatrix::identity(std::size_t n) {
  return GaugeMatrix(RatMat::identity(n), RatMat::identity(n), Trusted{});
}

GaugeMatrix operator*(const GaugeMatrix& a, const GaugeMatrix& b) {
  return GaugeMatrix(a.P_ * b.P_, b.P_inv_ * a.P_inv_, GaugeMatrix::Trusted{});
}

RatMat apply_gauge(const GaugeMatrix& P, const RatMat& A) {
  if (A.rows() != P.size() || A.cols() != P.size()) throw PreconditionError("apply_gauge: dimension mismatch");
  return P.P_inv() * (A * P.P() - derivative(P.P()));
}

SymIndex::SymIndex(std::size_t N, std::size_t m) : N_(N), m_(m) {
  if (N == 0) throw PreconditionError("SymIndex: dimension must be positive");
  std::vector<unsigned> cur(N, 0);
  // descending lexicographic enumeration of the compositions of m
  auto rec = [&](auto&& self, std::size_t i, unsigned rem) -> void {
    if (i == N - 1) {
      cur[i] = rem;
      index_.emplace(cur, monomials_.size());
      monomials_.push_back(cur);
      return;
    }
    for (unsigned e = rem + 1; e-- > 0;) {
      cur[i] = e;
      self(self, i + 1, rem - e);
    }
  };
  rec(rec, 0, static_cast<unsigned>(m));
}

std::size_t SymIndex::index_of(const std::vector<unsigned>& alpha) const {
  auto it = index_.find(alpha);
  if (it == index_.end()) throw PreconditionError("SymIndex: exponent vector not of the indexed degree");
  return it->second;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

RatMat sym_power_group(const RatMat& P, std::size_t m) {
  if (!P.is_square()) throw PreconditionError("sym_power_group: matrix not square");
  const std::size_t N = P.rows();
  SymIndex idx(N, m);
  RatMat S(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto& alpha = idx[r];
    // expand prod_i (sum_j P_ij u_j)^{alpha_i}
    std::map<std::vector<unsigned>, RatFun> poly{{std::vector<unsigned>(N, 0), RatFun(1)}};
    for (std::size_t i = 0; i < N; ++i) {
      for (unsigned e = 0; e < alpha[i]; ++e) {
        std::map<std::vector<unsigned>, RatFun> next;
        for (const auto& [mono, c] : poly) {
          for (std::size_t j = 0; j < N; ++j) {
            if (P(i, j).is_zero()) continue;
            auto m2 = mono;
            ++m2[j];
            next[m2] += c * P(i, j);
          }
        }
        poly = std::move(next);
      }
    }
    for (const auto& [mono, c] : poly)
      if (!c.is_zero()) S(r, idx.index_of(mono)) = c;
  }
  return S;
}

RatMat sym_power_algebra(const RatMat& A, std::size_t m) {
  if (!A.is_square()) throw PreconditionError("sym_power_algebra: matrix not square");
  const std::size_t N = A.rows();
  SymIndex idx(N, m);
  RatMat S(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto& alpha = idx[r];
    for (std::size_t i = 0; i < N; ++i) {
      if (alpha[i] == 0) continue;
      for (std::size_t j = 0; j < N; ++j) {
        if (A(i, j).is_zero()) continue;
        auto beta = alpha;
        --beta[i];
        ++beta[j];
        S(r, idx.index_of(beta)) += A(i, j) * Rational(alpha[i]);
      }
    }
  }
  return S;
}

GaugeMatrix assemble_block_diag(const std::vector<GaugeMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  RatMat P(n, n), Q(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    P.set_block(off, off, b.P());
    Q.set_block(off, off, b.P_inv());
    off += b.size();
  }
  return GaugeMatrix(std::move(P), std::move(Q), GaugeMatrix::Trusted{});
}

GaugeMatrix exp_sub_nilpotent(const RatFun& g, const ConstMat& B) {
  if (!B.is_square()) throw PreconditionError("exp_sub_nilpotent: matrix not square");
  if (!(B * B).is_zero()) throw PreconditionError("exp_sub_nilpotent: B^2 != 0");
  const std::size_t n = B.rows();
  RatMat gB = scale(B, g);
  RatMat P = RatMat::identity(n) + gB;
  RatMat Q = RatMat::identity(n) - gB;
  return GaugeMatrix(std::move(P), std::move(Q), GaugeMatrix::Trusted{});
}

RatMat apply_sub_gauge(const RatMat& A, const RatFun& g, const ConstMat& C, std::size_t d1) {
  const std::size_t n = A.rows();
  if (!A.is_square() || C.rows() != n || C.cols() != n) throw PreconditionError("apply_sub_gauge: dimension mismatch");
  if (!in_sub(C, d1)) throw PreconditionError("apply_sub_gauge: C is not in the lower-left block");
  if (!is_block_lower_triangular(A, d1)) throw PreconditionError("apply_sub_gauge: A is not block lower triangular");
  if (g.is_zero()) return A;
  // [A, C] = A C - C A, using the sparsity of C
  RatMat comm(n, n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(C(l, j)) == 0) continue;
      const Rational& c = C(l, j);
      for (std::size_t i = 0; i < n; ++i)
        if (!A(i, l).is_zero()) comm(i, j) += A(i, l) * c;  // (A C)(i, j)
      for (std::size_t k = 0; k < n; ++k)
        if (!A(j, k).is_zero()) comm(l, k) -= A(j, k) * c;  // (C A)(l, k)
    }
  RatMat out = A;
  RatFun dg = g.derivative();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!comm(i, j).is_zero()) out(i, j) += g * comm(i, j);
      if (sgn(C(i, j)) != 0 && !dg.is_zero()) out(i, j) -= dg * C(i, j);
    }
  return out;
}

}  // namespace varred

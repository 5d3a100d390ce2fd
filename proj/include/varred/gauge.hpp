#pragma once

#include <map>
#include <vector>

#include "varred/matrix.hpp"

namespace varred {

/// Invertible matrix over Q(x) carried together with its inverse.
class GaugeMatrix {
 public:
  GaugeMatrix() = default;
  /// Computes the inverse; throws PreconditionError when P is singular.
  explicit GaugeMatrix(RatMat P);
  /// Uses the supplied inverse after checking P * P_inv == Id.
  GaugeMatrix(RatMat P, RatMat P_inv);

  static GaugeMatrix identity(std::size_t n);

  const RatMat& P() const noexcept { return P_; }
  const RatMat& P_inv() const noexcept { return P_inv_; }
  std::size_t size() const noexcept { return P_.rows(); }

  /// (P Q) with inverse Q^{-1} P^{-1}.
  friend GaugeMatrix operator*(const GaugeMatrix& a, const GaugeMatrix& b);

 private:
  struct Trusted {};
  GaugeMatrix(RatMat P, RatMat P_inv, Trusted) : P_(std::move(P)), P_inv_(std::move(P_inv)) {}
  friend GaugeMatrix exp_sub_nilpotent(const RatFun& g, const ConstMat& B);
  friend GaugeMatrix assemble_block_diag(const std::vector<GaugeMatrix>& blocks);

  RatMat P_;
  RatMat P_inv_;
};

/// P[A] = P^{-1} (A P - P')
RatMat apply_gauge(const GaugeMatrix& P, const RatMat& A);

/// Degree-m monomials in N variables, graded-lex: exponent vectors in
/// descending lexicographic order (u1^m first).
class SymIndex {
 public:
  SymIndex(std::size_t N, std::size_t m);

  std::size_t phase_dim() const noexcept { return N_; }
  std::size_t degree() const noexcept { return m_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  const std::vector<std::vector<unsigned>>& monomials() const noexcept { return monomials_; }
  const std::vector<unsigned>& operator[](std::size_t k) const { return monomials_[k]; }
  /// Position of an exponent vector of total degree m; throws if absent.
  std::size_t index_of(const std::vector<unsigned>& alpha) const;

 private:
  std::size_t N_, m_;
  std::vector<std::vector<unsigned>> monomials_;
  std::map<std::vector<unsigned>, std::size_t> index_;
};

Integer binomial(unsigned long n, unsigned long k);

/// Action on degree-m monomials: row alpha holds the coefficients of
/// (P u)^alpha in the monomials u^beta.
RatMat sym_power_group(const RatMat& P, std::size_t m);
/// Derivation induced by u' = A u on degree-m monomials.
RatMat sym_power_algebra(const RatMat& A, std::size_t m);

GaugeMatrix assemble_block_diag(const std::vector<GaugeMatrix>& blocks);

/// Id + g B with inverse Id - g B; requires B^2 = 0.
GaugeMatrix exp_sub_nilpotent(const RatFun& g, const ConstMat& B);

/// (Id + g C)[A] computed as A + g [A, C] - g' C. Valid when C^2 = 0 and
/// C A C = 0, which holds for C in the lower-left block and A block lower
/// triangular for the split (d1, n - d1); both are checked.
RatMat apply_sub_gauge(const RatMat& A, const RatFun& g, const ConstMat& C, std::size_t d1);

}  // namespace varred

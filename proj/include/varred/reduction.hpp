#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "varred/gauge.hpp"
#include "varred/jordan.hpp"
#include "varred/lie.hpp"
#include "varred/varequations.hpp"

namespace varred {

enum class StepKind { DiagonalAssembly, ChainRemoval, HermitePartial, Unresolved };

std::string to_string(StepKind k);

struct ReductionStep {
  StepKind kind = StepKind::ChainRemoval;
  GaugeMatrix gauge;
  std::optional<ConstMat> removed_generator;
  std::optional<RatFun> solved_g;
  std::optional<RatFun> residual_L;
  std::vector<Poly> new_poles;
  // position in the chain schedule, when the step came from a chain
  std::optional<std::size_t> chain;
  std::optional<std::size_t> position;
};

struct ObstructionCertificate {
  std::size_t first = 0, second = 0;  // indices into the final Lie basis
  ConstMat bracket;
  std::vector<RatFun> residuals;  // simple-pole parts of the final coefficients
};

/// Formal linear combination sum coeff[s] * s of tower symbols; the empty
/// name stands for 1.
using FormalExpr = std::map<std::string, RatFun>;

std::string to_string(const FormalExpr& e, std::string_view var = "x");

struct TowerElement {
  std::size_t depth = 1;
  FormalExpr integrand;
  std::string name;
  std::string recognized_as = "unclassified";  // log | polylog-k | unclassified
  std::optional<RatFun> argument;  // u in log(u), z in Li_k(z)
};

struct ReductionReport {
  std::size_t order = 1;
  RatMat initial;
  RatMat partially_reduced;
  RatMat final_matrix;
  GaugeMatrix total_gauge;  // total_gauge[initial] == final_matrix
  std::vector<ReductionStep> steps;

  // analysis of the partially reduced system
  std::size_t top = 0, tail = 0;
  std::size_t partial_wei_norman_terms = 0;
  std::size_t partial_lie_dim = 0;
  // dimensions of the projections of the partial Lie algebra onto the
  // diagonal blocks and the lower-left block
  std::size_t diag_dim = 0, sub_dim = 0;
  std::optional<WNTerm> diag_generator;
  ConstMat psi;
  std::vector<Rational> psi_eigenvalues;
  std::vector<std::size_t> block_sizes;

  WeiNormanDecomp final_wei_norman;
  LieBasis final_lie;
  bool abelian = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::optional<ObstructionCertificate> certificate;
  std::vector<TowerElement> tower;
  std::optional<std::string> tower_refusal;
  bool reduced_certified = false;

  /// "abelian", "non-integrable" or "candidate obstruction"
  std::string verdict() const;
};

/// Q_m[A_m] with Q_m = diag(Sym^m P1, P_prev); for a first-order system
/// (tail 0) this is P1[A_1].
BlockSystem reduce_diagonal(const BlockSystem& Am, const GaugeMatrix& P1, const GaugeMatrix& P_prev);

/// A = diag + sum beta_i B_i with B_i in the lower-left block.
struct SubdiagonalDecomp {
  RatMat diag;
  std::vector<ConstMat> basis;
  std::vector<RatFun> beta;
  std::size_t d1 = 0;
  RatMat recompose() const;
};

struct RemovalResult {
  RatMat matrix;
  ReductionStep step;
};

/// Gauge by Id + g B_target with g' = gamma_target g + beta_target. When no
/// rational g exists and gamma_target = 0 the Hermite part R of beta_target
/// is removed and its simple-pole part recorded; with gamma_target != 0 the
/// step is marked unresolved.
RemovalResult remove_generator(const SubdiagonalDecomp& A, std::size_t target, const std::vector<RatFun>& gamma);

/// Coordinates of the lower-left block of a matrix in a fixed basis of
/// constant subdiagonal matrices.
class SubCoordinates {
 public:
  SubCoordinates(std::vector<ConstMat> basis, std::size_t d1);
  const std::vector<ConstMat>& basis() const noexcept { return basis_; }
  /// Coefficient of basis element k in the sub part of A; A's sub part must
  /// lie in the span.
  RatFun coefficient(const RatMat& A, std::size_t k) const;
  std::vector<RatFun> coefficients(const RatMat& A) const;

 private:
  std::vector<ConstMat> basis_;
  std::size_t d1_;
  std::vector<std::pair<std::size_t, std::size_t>> positions_;
  ConstMat inv_;  // coefficient k = sum_j inv_(k, j) * A(positions_[j])
};

/// Eliminates a Jordan chain (kernel first, Psi(chain[s]) = chain[s-1]) from
/// the top down. Coefficients are read through `coords`, in which the chain
/// elements are basis indices first_index .. first_index + d - 1. Positions
/// s = d-1 .. 0 are processed; the kernel element is processed as well
/// unless include_kernel is false.
std::vector<ReductionStep> reduce_jordan_block(RatMat& A, std::size_t d1, const SubCoordinates& coords,
                                               std::size_t first_index, std::size_t length,
                                               const RatFun& chain_gamma = RatFun(), bool include_kernel = true);

/// Wei-Norman analysis, adjoint Jordan chains and blockwise elimination on a
/// system whose diagonal blocks are already reduced.
ReductionReport reduce_subdiagonal(const BlockSystem& partially_reduced);

/// Single Wei-Norman term a M whose coefficient has only simple poles.
bool certify_monogenous_reduced(const RatMat& A);

std::optional<ObstructionCertificate> detect_obstruction(const ReductionReport& report);

/// Formal elimination of a Wei-Norman system whose Lie algebra is spanned by
/// a leading term M_t and an abelian ideal on which ad(M_t) is nilpotent.
/// Throws PreconditionError when no such leading term exists.
std::vector<TowerElement> picard_vessiot_tower(const RatMat& final_matrix);

/// Diagonal reduction, subdiagonal reduction, obstruction and tower for each
/// order; order m uses the total gauge of order m-1.
std::vector<ReductionReport> reduce_lve(const std::vector<BlockSystem>& systems, const GaugeMatrix& P1);

}  // namespace varred

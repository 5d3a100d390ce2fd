#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "varred/matrix.hpp"

namespace varred {

struct WNTerm {
  RatFun coeff;
  ConstMat mat;
};

/// A = sum coeff_i * mat_i with the coeff_i linearly independent over Q.
struct WeiNormanDecomp {
  std::vector<WNTerm> terms;
  std::size_t dim_k_span = 0;  // dimension of the Q-span of the entries

  RatMat recompose(std::size_t rows, std::size_t cols) const;
};

/// Coefficient basis: reduced echelon form of the entries written in a common
/// partial-fraction frame (poles ordered by factor, higher powers first,
/// polynomial part last). A basis element that is proportional to some entry
/// is rescaled to the first such entry in row-major order.
WeiNormanDecomp wei_norman(const RatMat& A);

struct LieBasis {
  std::vector<ConstMat> gens;
  std::vector<ConstMat> basis;
  /// structure[i][j] = coordinates of [basis_i, basis_j] in basis
  std::vector<std::vector<QVector>> structure;

  std::size_t dim() const noexcept { return basis.size(); }
  /// Coordinates of m in the basis, if it lies in the span.
  std::optional<QVector> coordinates(const ConstMat& m) const;
};

/// Breadth-first saturation under brackets. The structure table is filled
/// when `with_structure` is set.
LieBasis lie_closure(const std::vector<ConstMat>& gens, bool with_structure = true);

struct DiagSubSplit {
  std::size_t d1 = 0, d2 = 0;
  std::vector<ConstMat> diag_basis;
  std::vector<ConstMat> sub_basis;
};

bool is_block_lower_triangular(const ConstMat& m, std::size_t d1);
bool is_block_lower_triangular(const RatMat& m, std::size_t d1);
ConstMat diag_part(const ConstMat& m, std::size_t d1);
ConstMat sub_part(const ConstMat& m, std::size_t d1);
RatMat diag_part(const RatMat& m, std::size_t d1);
RatMat sub_part(const RatMat& m, std::size_t d1);
/// m is zero outside the lower-left d2 x d1 block
bool in_sub(const ConstMat& m, std::size_t d1);

DiagSubSplit split_diag_sub(const std::vector<ConstMat>& basis, std::size_t d1, std::size_t d2);

/// Matrix of B -> [D, B] in sub_basis coordinates.
ConstMat adjoint_on_sub(const ConstMat& D, const std::vector<ConstMat>& sub_basis);

struct AbelianResult {
  bool abelian = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

AbelianResult is_abelian(const LieBasis& b);

}  // namespace varred

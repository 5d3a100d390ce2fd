#pragma once

#include <vector>

#include "varred/matrix.hpp"

namespace varred {

/// Jordan chains of a nilpotent operator. Each chain is stored kernel first:
/// N * chain[0] = 0 and N * chain[j] = chain[j-1].
struct JordanChains {
  std::vector<std::vector<QVector>> chains;
  std::size_t operator_dim = 0;

  std::vector<std::size_t> block_sizes() const;
  /// Columns are the chain vectors, chain by chain, kernel first.
  ConstMat change_of_basis() const;
};

/// Chains over Q of a nilpotent N. Block sizes are descending; equal sizes are
/// ordered by the first nonzero index of their kernel vector. Throws
/// PreconditionError("not nilpotent ...") otherwise.
JordanChains nilpotent_jordan_chains(const ConstMat& N);

/// The nilpotent Jordan matrix with ones on the superdiagonal of each block
/// for the basis ordering used by change_of_basis().
ConstMat nilpotent_jordan_matrix(const std::vector<std::size_t>& block_sizes);

/// Generalized eigenspace of a rational eigenvalue with Jordan chains of
/// (M - lambda) inside it.
struct EigenChains {
  Rational eigenvalue;
  JordanChains chains;  // vectors in ambient coordinates
};

/// Splits M into generalized eigenspaces. All eigenvalues must be rational;
/// otherwise UnsupportedError("constant field too small ...") is raised.
/// Eigenvalues are listed ascending.
std::vector<EigenChains> rational_jordan_chains(const ConstMat& M);

/// Characteristic polynomial det(x Id - M).
Poly characteristic_polynomial(const ConstMat& M);

}  // namespace varred

#pragma once

#include <string>
#include <vector>

#include "varred/gauge.hpp"
#include "varred/mpoly.hpp"

namespace varred {

/// Rational particular solution phi(x) with sigma = dx/dt.
struct ParticularSolution {
  std::vector<RatFun> phi;
  RatFun sigma;
};

struct HamiltonianSpec {
  std::size_t n = 0;  // degrees of freedom; state is (q1..qn, p1..pn)
  MPoly H;
  ParticularSolution solution;
  std::string variable = "x";

  /// Validates shapes and the solution check; throws PreconditionError
  /// naming the failing components.
  static HamiltonianSpec make(std::size_t n, MPoly H, ParticularSolution sol, std::string variable = "x");
};

/// X_H = J grad H, components ordered (q1..qn, p1..pn).
std::vector<MPoly> hamiltonian_vector_field(const MPoly& H, std::size_t n);
MPoly poisson_bracket(const MPoly& f, const MPoly& g, std::size_t n);

/// Indices of the components where sigma * dphi/dx != X_H(phi).
std::vector<std::size_t> solution_residual_failures(const MPoly& H, std::size_t n, const ParticularSolution& sol);

/// (1/sigma) * Jacobian of X_H along phi.
RatMat first_variational(const HamiltonianSpec& spec);

/// sum_{i=1}^m binomial(N + i - 1, N - 1)
std::size_t lve_dimension(std::size_t N, std::size_t m);

/// Block lower triangular system [[sym^m A1, 0], [B_m, A_{m-1}]] with its
/// cumulative gauge from the originally built system.
struct BlockSystem {
  std::size_t order = 1;
  RatMat matrix;
  std::size_t top = 0;   // size of the degree-m block
  std::size_t tail = 0;  // size of the order m-1 system
  GaugeMatrix gauge;     // matrix == gauge[built matrix]

  std::size_t dim() const noexcept { return matrix.rows(); }
};

/// Systems of orders 1..m. State coordinates are the monomials u^alpha of
/// the deviation u = y - phi, degree m first down to degree 1 (graded-lex
/// inside each degree); row alpha is d/dx(u^alpha) truncated at degree m.
std::vector<BlockSystem> build_lve(const HamiltonianSpec& spec, std::size_t m);

}  // namespace varred

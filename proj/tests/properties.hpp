#pragma once

#include <cstdint>
#include <string>

namespace testing {

struct SuiteResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

/// Block identities of lower-triangular matrices: products of lower-left
/// blocks vanish, exp(N) = Id + N, [M, N] stays lower-left, products of
/// block-diagonal matrices stay block diagonal. Sizes up to 6.
SuiteResult block_identities(std::size_t count, std::uint64_t seed);

/// Q[P[A]] == (PQ)[A] and Sym^2(PQ) == Sym^2(P) Sym^2(Q) over Q(x).
SuiteResult gauge_composition(std::size_t count, std::uint64_t seed);

/// R' + L == f, den(L) squarefree, and L == 0 for exact derivatives.
SuiteResult hermite_reconstruction(std::size_t count, std::uint64_t seed);

/// After remove_generator with full elimination the target coefficient is
/// zero, the other coefficients follow beta_i + g gamma_i and the diagonal
/// part is unchanged.
SuiteResult removal_postcondition(std::size_t count, std::uint64_t seed);

/// build_lve against lve_by_substitution for a cubic one-degree-of-freedom
/// Hamiltonian, orders 1 and 2.
SuiteResult lve_substitution_oracle();

/// lie_closure against right-normed bracket words of length <= depth.
SuiteResult closure_oracle(std::size_t count, std::size_t depth, std::uint64_t seed);

}  // namespace testing

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "varred/poly.hpp"

namespace varred {

/// Irreducible factor with its multiplicity; `factor` is monic over Q.
struct FactorPower {
  Poly factor;
  std::size_t multiplicity;
};

/// Complete factorization over Q of a nonzero polynomial into monic
/// irreducible factors, sorted by (degree, coefficients). Constants yield an
/// empty list. Deterministic: the modular search uses fixed primes and a fixed
/// RNG seed.
std::vector<FactorPower> factor(const Poly& p);

/// Irreducible factors of a squarefree polynomial (no multiplicities).
std::vector<Poly> factor_squarefree(const Poly& p);

/// Scale a rational polynomial to a primitive integer polynomial with positive
/// leading coefficient. Returns the integer coefficients, ascending.
std::vector<Integer> primitive_integer_coeffs(const Poly& p);

}  // namespace varred

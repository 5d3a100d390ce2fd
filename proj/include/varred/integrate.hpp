#pragma once

#include <optional>
#include <vector>

#include "varred/poly.hpp"
#include "varred/ratfun.hpp"

namespace varred {

struct PFTerm {
  Poly factor;              // monic irreducible over Q
  std::size_t multiplicity; // power of factor in the denominator of this term
  Poly numerator;           // deg < deg(factor)
};

/// f = polynomial_part + sum numerator / factor^multiplicity
struct PFDecomp {
  Poly polynomial_part;
  std::vector<PFTerm> terms;  // grouped by factor (sorted), multiplicity ascending

  RatFun recombine() const;
};

PFDecomp partial_fractions(const RatFun& f);

/// f = R' + L with den(L) squarefree.
struct HermiteSplit {
  RatFun R;
  RatFun L;
};

/// Hermite reduction (Mack's linear variant). R carries no constant term in
/// its polynomial part. No algebraic constants are introduced.
HermiteSplit hermite_split(const RatFun& f);

/// A rational solution g of g' = gamma*g + beta, if one exists. When several
/// exist (gamma = 0 or gamma a logarithmic derivative), one is returned; for
/// gamma = 0 it is the Hermite R of beta.
std::optional<RatFun> solve_first_order_rational(const RatFun& gamma, const RatFun& beta);

/// Distinct monic irreducible factors of the denominator, sorted.
std::vector<Poly> pole_factors(const RatFun& f);

/// Degree at infinity, deg(num) - deg(den); f must be nonzero.
long degree_at_infinity(const RatFun& f);

/// Multiplicity of the irreducible p in the denominator of f.
std::size_t pole_order(const RatFun& f, const Poly& p);

}  // namespace varred

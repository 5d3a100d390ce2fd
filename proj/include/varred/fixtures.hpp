#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "varred/gauge.hpp"
#include "varred/varequations.hpp"

/// Henon-Heiles data and small constant matrices shipped in fixtures/.
namespace varred::fixtures {

std::vector<std::string> names();
/// Raw text of a shipped fixture file; throws PreconditionError if unknown.
std::string_view text(std::string_view name);

HamiltonianSpec henon_heiles();
RatMat hh_A1();
GaugeMatrix hh_P1();
/// (5/(3x)) D1
RatMat hh_A1R();
ConstMat hh_D1();
RatFun hh_A1R_coefficient();
ConstMat hh_psi20();
ConstMat hh_C0();
/// Wei-Norman matrices of hh_A1 for the coefficients 2/x and -12x/(x^2+1)^2.
ConstMat wn_M1();
ConstMat wn_M2();
ConstMat m0();
ConstMat m1();
ConstMat psi_shift5();

}  // namespace varred::fixtures

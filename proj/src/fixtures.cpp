#include "varred/fixtures.hpp"

#include "varred/io.hpp"

namespace varred::fixtures {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kFixtureFiles[];
extern const std::size_t kFixtureCount;
}  // namespace detail

std::vector<std::string> names() {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < detail::kFixtureCount; ++i) out.emplace_back(detail::kFixtureFiles[i].first);
  return out;
}

std::string_view text(std::string_view name) {
  for (std::size_t i = 0; i < detail::kFixtureCount; ++i)
    if (detail::kFixtureFiles[i].first == name) return detail::kFixtureFiles[i].second;
  throw PreconditionError("unknown fixture '" + std::string(name) + "'");
}

namespace {

RatMat system(std::string_view name) { return parse_system_file(text(name), name).matrix; }
ConstMat constant(std::string_view name) { return to_constmat(system(name)); }

}  // namespace

HamiltonianSpec henon_heiles() { return parse_hamiltonian_file(text("henon_heiles.ham"), "henon_heiles.ham"); }
RatMat hh_A1() { return system("hh_A1.sys"); }
GaugeMatrix hh_P1() { return GaugeMatrix(system("hh_P1.sys")); }
RatMat hh_A1R() { return system("hh_A1R.sys"); }
ConstMat hh_D1() { return constant("hh_D1.sys"); }
RatFun hh_A1R_coefficient() { return RatFun(Poly(Rational(5)), Poly::monomial(Rational(3), 1)); }
ConstMat hh_psi20() { return constant("hh_psi20.sys"); }
ConstMat hh_C0() { return constant("hh_C0.sys"); }
ConstMat wn_M1() { return constant("wn_M1.sys"); }
ConstMat wn_M2() { return constant("wn_M2.sys"); }
ConstMat m0() { return constant("m0.sys"); }
ConstMat m1() { return constant("m1.sys"); }
ConstMat psi_shift5() { return constant("psi_shift5.sys"); }

}  // namespace varred::fixtures

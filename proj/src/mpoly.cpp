#include "varred/mpoly.hpp"

#include <optional>

#include "varred/expr.hpp"

namespace varred {

std::vector<std::string> canonical_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("q" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
  return names;
}

MPoly parse_mpoly(std::string_view text, const std::vector<std::string>& names) {
  const std::size_t nv = names.size();
  ExprParser<MPoly> p(
      text,
      [&](std::string_view name) -> std::optional<MPoly> {
        for (std::size_t i = 0; i < nv; ++i)
          if (names[i] == name) return MPoly::variable(i, nv);
        return std::nullopt;
      },
      [](const MPoly& a, const MPoly& b) -> MPoly {
        if (b.total_degree() != 0 || b.is_zero()) throw ParseError("division by a non-constant or zero polynomial");
        return a.scaled(1 / b.coeff({}));
      },
      [](const MPoly& b, unsigned long e) { return pow(b, e); });
  return p.parse().padded(nv);
}

}  // namespace varred

#include "varred/expr.hpp"

namespace varred {

RatFun parse_ratfun(std::string_view text, std::string_view var) {
  ExprParser<RatFun> p(
      text,
      [var](std::string_view name) -> std::optional<RatFun> {
        if (name == var) return RatFun::x();
        return std::nullopt;
      },
      [](const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw ParseError("division by zero");
        return a / b;
      },
      [](const RatFun& b, unsigned long e) { return pow(b, static_cast<long>(e)); });
  return p.parse();
}

Rational parse_rational(std::string_view text) {
  ExprParser<Rational> p(
      text, [](std::string_view) -> std::optional<Rational> { return std::nullopt; },
      [](const Rational& a, const Rational& b) -> Rational {
        if (b == 0) throw ParseError("division by zero");
        return a / b;
      },
      [](const Rational& b, unsigned long e) {
        Rational r = 1;
        for (unsigned long i = 0; i < e; ++i) r *= b;
        return r;
      });
  return p.parse();
}

}  // namespace varred

#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "varred/error.hpp"
#include "varred/ratfun.hpp"

namespace varred {

/// Recursive-descent parser for the expression grammar
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' integer)?
///   primary := integer | identifier | '(' expr ')'
///
/// T must support +, -, *, unary -, construction from Integer and
/// pow(T, unsigned long). Identifiers are resolved through `lookup`; division
/// goes through `divide`, which may throw ParseError for unsupported divisors.
template <class T>
class ExprParser {
 public:
  using Lookup = std::function<std::optional<T>(std::string_view)>;
  using Divide = std::function<T(const T&, const T&)>;
  using Power = std::function<T(const T&, unsigned long)>;

  ExprParser(std::string_view text, Lookup lookup, Divide divide, Power power)
      : text_(text), lookup_(std::move(lookup)), divide_(std::move(divide)), power_(std::move(power)) {}

  T parse() {
    pos_ = 0;
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    T v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  T expr() {
    T v = term();
    while (true) {
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  T term() {
    T v = unary();
    while (true) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        T d = unary();
        try {
          v = divide_(v, d);
        } catch (const ParseError& e) {
          throw ParseError(e.what(), at);
        } catch (const std::domain_error& e) {
          throw ParseError(e.what(), at);
        }
      } else {
        return v;
      }
    }
  }

  T unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  T power() {
    T base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected nonnegative integer exponent", start);
      if (pos_ - start > 6) throw ParseError("exponent too large", start);
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      return power_(base, e);
    }
    return base;
  }

  T primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      T v = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return T(Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto v = lookup_(name);
      if (!v) throw ParseError("unknown identifier '" + std::string(name) + "'", start);
      return *v;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  Lookup lookup_;
  Divide divide_;
  Power power_;
  std::size_t pos_ = 0;
};

/// Parses an expression in one variable into a canonical rational function.
/// Throws ParseError (with position) on syntax errors and division by zero.
RatFun parse_ratfun(std::string_view text, std::string_view var = "x");

/// Parses a rational constant such as "-12/5".
Rational parse_rational(std::string_view text);

}  // namespace varred

#pragma once

#include <cctype>
#include <string_view>

#include "hybridsum/poly.hpp"

namespace hybridsum {

// Recursive-descent parser for bivariate polynomial expressions over F_p.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' uint)?
//   atom   := uint | 'x' | 'y' | '(' expr ')'
//
// Precedence: ^ above unary minus above * above binary +/-, so -x^2 == -(x^2).
// Whitespace is insignificant; integer literals are reduced mod p while scanned.
// A rational map is "expr / expr" with a single top-level slash.
class ExprParser {
 public:
  ExprParser(std::string_view text, u64 p) : s_(text), p_(p) {}

  BivarPoly parse_polynomial() {
    BivarPoly e = expr();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

  RationalMap parse_rational_map() {
    BivarPoly num = expr();
    skip_ws();
    if (pos_ == s_.size()) return RationalMap::from_poly(std::move(num));
    if (s_[pos_] != '/') throw SyntaxError("unexpected trailing input", pos_);
    ++pos_;
    BivarPoly den = expr();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
    if (den.is_zero()) throw ZeroDenominatorError();
    return RationalMap(std::move(num), std::move(den));
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  BivarPoly expr() {
    BivarPoly acc = term();
    for (;;) {
      if (peek_is('+')) {
        ++pos_;
        acc = poly_add(acc, term());
      } else if (peek_is('-')) {
        ++pos_;
        acc = poly_sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  BivarPoly term() {
    BivarPoly acc = factor();
    while (peek_is('*')) {
      ++pos_;
      acc = poly_mul(acc, factor());
    }
    return acc;
  }

  BivarPoly factor() {
    if (peek_is('-')) {
      ++pos_;
      return poly_neg(factor());
    }
    BivarPoly a = atom();
    if (peek_is('^')) {
      ++pos_;
      return poly_pow(a, exponent());
    }
    return a;
  }

  BivarPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == 'x') {
      ++pos_;
      return BivarPoly::var_x(p_);
    }
    if (c == 'y') {
      ++pos_;
      return BivarPoly::var_y(p_);
    }
    if (c == '(') {
      ++pos_;
      BivarPoly e = expr();
      if (!peek_is(')')) throw SyntaxError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return BivarPoly::constant(p_, uint_mod_p());
    throw SyntaxError("expected a number, 'x', 'y' or '('", pos_);
  }

  u64 uint_mod_p() {
    u64 v = 0;
    const size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = (v * 10 + static_cast<u64>(s_[pos_] - '0')) % p_;
      ++pos_;
    }
    if (pos_ == start) throw SyntaxError("expected digits", pos_);
    return v;
  }

  u64 exponent() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '-') throw NegativeExponentError(pos_);
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw SyntaxError("expected a nonnegative integer exponent", pos_);
    u64 v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<u64>(s_[pos_] - '0');
      if (v > kMaxExponent) throw SyntaxError("exponent too large", pos_);
      ++pos_;
    }
    return v;
  }

  static constexpr u64 kMaxExponent = 4096;

  std::string_view s_;
  u64 p_;
  size_t pos_ = 0;
};

inline BivarPoly parse_poly(std::string_view text, const PrimeField& field) {
  return ExprParser(text, field.p()).parse_polynomial();
}

inline RationalMap parse_rational(std::string_view text, const PrimeField& field) {
  return ExprParser(text, field.p()).parse_rational_map();
}

inline BivarPoly parse_poly(std::string_view text, u64 p) {
  return ExprParser(text, p).parse_polynomial();
}

inline RationalMap parse_rational(std::string_view text, u64 p) {
  return ExprParser(text, p).parse_rational_map();
}

}  // namespace hybridsum

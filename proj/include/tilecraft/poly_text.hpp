#pragma once

// Text form of Laurent polynomials: "x*y^2 - x^2*y^-1 - x^-1*y^3 + 1".
// Terms print in descending canonical exponent order. The parser also
// accepts parentheses, implicit products, U+00B7 as '*' and U+2212 as '-'.

#include <cctype>
#include <string>
#include <string_view>

#include "tilecraft/algebra.hpp"

namespace tilecraft {

namespace detail {

inline std::string monomial_text(Vec2 e) {
  std::string out;
  auto factor = [&out](char var, Coord k) {
    if (k == 0) return;
    if (!out.empty()) out += '*';
    out += var;
    if (k != 1) out += "^" + std::to_string(k);
  };
  factor('x', e.x);
  factor('y', e.y);
  return out;
}

}  // namespace detail

inline std::string to_string(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    auto [e, c] = *it;
    const bool negative = c < 0;
    const auto mag = negative ? -static_cast<unsigned long long>(c) : static_cast<unsigned long long>(c);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (e.is_zero())
      out += std::to_string(mag);
    else if (mag == 1)
      out += detail::monomial_text(e);
    else
      out += std::to_string(mag) + "*" + detail::monomial_text(e);
  }
  return out;
}

// "(x^2 - 1)*(y^3 - 1)"
inline std::string to_string_factored(const std::vector<LaurentPoly>& factors) {
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += '*';
    out += "(" + to_string(f) + ")";
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) {
    // Fold the two accepted multibyte symbols into ASCII.
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text.compare(i, 2, "\xC2\xB7") == 0) {
        src_ += '*';
        ++i;
      } else if (text.compare(i, 3, "\xE2\x88\x92") == 0) {
        src_ += '-';
        i += 2;
      } else {
        src_ += text[i];
      }
    }
  }

  LaurentPoly parse() {
    auto p = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, "polynomial at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  Coefficient integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    try {
      return std::stoll(src_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }

  Coefficient signed_integer() {
    bool neg = accept('-');
    if (!neg) accept('+');
    auto v = integer();
    return neg ? -v : v;
  }

  LaurentPoly expr() {
    LaurentPoly acc;
    bool neg = accept('-');
    if (!neg) accept('+');
    auto t = term();
    acc += neg ? -t : t;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= src_.size()) return false;
    char c = src_[pos_];
    return c == 'x' || c == 'y' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }

  LaurentPoly term() {
    auto acc = factor();
    while (true) {
      if (accept('*'))
        acc = poly_mul(acc, factor());
      else if (starts_factor())
        acc = poly_mul(acc, factor());
      else
        return acc;
    }
  }

  LaurentPoly factor() {
    if (accept('(')) {
      auto inner = expr();
      if (!accept(')')) fail("expected ')'");
      if (!accept('^')) return inner;
      auto k = integer();
      auto out = LaurentPoly::constant(1);
      for (Coefficient i = 0; i < k; ++i) out = poly_mul(out, inner);
      return out;
    }
    if (accept('x')) return LaurentPoly::monomial({accept('^') ? signed_integer() : 1, 0});
    if (accept('y')) return LaurentPoly::monomial({0, accept('^') ? signed_integer() : 1});
    if (starts_factor()) return LaurentPoly::constant(integer());
    fail(pos_ < src_.size() ? "unexpected '" + std::string(1, src_[pos_]) + "'" : "unexpected end of input");
  }

  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline LaurentPoly parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

}  // namespace tilecraft

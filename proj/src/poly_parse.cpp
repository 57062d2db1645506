#include <cctype>

#include "emdyn/polyalg.hpp"

namespace emdyn {
namespace {

// Recursive descent:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := ('+'|'-') unary | power
//   power  := atom ('^' integer)?
//   atom   := number | identifier | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, const VarList& vars) : s_(text), vars_(vars) {}

  MultiPoly run() {
    MultiPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial parse error at " + std::to_string(pos_) + ": " + what + " in '" +
                     std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    MultiPoly p = term();
    for (;;) {
      if (eat('+'))
        p += term();
      else if (eat('-'))
        p -= term();
      else
        return p;
    }
  }

  MultiPoly term() {
    MultiPoly p = unary();
    for (;;) {
      if (eat('*')) {
        p *= unary();
      } else if (eat('/')) {
        MultiPoly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        p *= Rational(1 / d.constant_term());
      } else {
        return p;
      }
    }
  }

  MultiPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (k > 64) fail("exponent too large");
      return base.pow(static_cast<unsigned>(k));
    }
    return base;
  }

  MultiPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      MultiPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      // scientific suffix, only when followed by digits
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t q = pos_ + 1;
        if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
        if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
          pos_ = q;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
      }
      return MultiPoly::constant(vars_, parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (!vars_.contains(name)) fail("unknown variable '" + std::string(name) + "'");
      return MultiPoly::variable(vars_, name);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view s_;
  const VarList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const VarList& vars) { return Parser(text, vars).run(); }

}  // namespace emdyn

#pragma once

#include <cctype>
#include <functional>
#include <string>

#include "adelix/errors.hpp"
#include "adelix/ring.hpp"

namespace adelix {

// Recursive-descent parser for arithmetic expressions over one algebra:
//   expr  := ['+'|'-'] term (('+'|'-') term)*
//   term  := power (('*'|'/') power)*
//   power := atom ['^' ['-'] digits]
//   atom  := integer | identifier | '(' expr ')'
template <class V>
struct ExprAlgebra {
  std::function<V(const Int&)> number;
  std::function<V(const std::string&)> variable;
  std::function<V(const V&, const V&)> add, sub, mul, div;
  std::function<V(const V&)> neg;
  std::function<V(const V&, long)> pow;
};

template <class V>
class ExprParser {
 public:
  ExprParser(const ExprAlgebra<V>& alg, std::string text) : A_(alg), s_(std::move(text)) {}

  V parse() {
    V v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  const ExprAlgebra<V>& A_;
  std::string s_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw ParseError(why + " at position " + std::to_string(i_) + " in '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  V expr() {
    skip();
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    V v = term();
    if (negate) v = A_.neg(v);
    while (true) {
      if (eat('+'))
        v = A_.add(v, term());
      else if (eat('-'))
        v = A_.sub(v, term());
      else
        return v;
    }
  }
  V term() {
    V v = power();
    while (true) {
      if (eat('*'))
        v = A_.mul(v, power());
      else if (eat('/'))
        v = A_.div(v, power());
      else
        return v;
    }
  }
  V power() {
    V v = atom();
    if (eat('^')) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      skip();
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("exponent expected");
      long e = std::stol(s_.substr(st, i_ - st));
      v = A_.pow(v, neg ? -e : e);
    }
    return v;
  }
  V atom() {
    skip();
    if (i_ >= s_.size()) fail("operand expected");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      V v = expr();
      if (!eat(')')) fail("')' expected");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return A_.number(Int(s_.substr(st, i_ - st)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return A_.variable(s_.substr(st, i_ - st));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace adelix

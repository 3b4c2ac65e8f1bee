#include "arbor/parse.hpp"

#include <cctype>

namespace arbor {
namespace {

class Parser {
 public:
  Parser(std::string_view s, std::string_view vars) : s_(s), vars_(vars) {}

  RatPolynomial run() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    RatPolynomial r = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return r;
  }

  char used() const { return var_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_primary(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || (c && vars_.find(c) != std::string_view::npos);
  }

  RatPolynomial expr() {
    RatPolynomial acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      RatPolynomial rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  RatPolynomial term() {
    RatPolynomial acc = unary();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (c == '/') {
        ++pos_;
        const std::size_t at = pos_;
        RatPolynomial d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division by a non-constant or zero");
        }
        Rational inv = 1 / d.leading();
        acc = acc * RatPolynomial(inv);
      } else if (starts_primary(c)) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  RatPolynomial unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatPolynomial power() {
    RatPolynomial base = primary();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    const std::size_t start = pos_;
    unsigned long e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (e > 100000) fail("exponent too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected exponent");
    RatPolynomial r(Rational(1));
    for (unsigned long i = 0; i < e; ++i) r = r * base;
    return r;
  }

  RatPolynomial primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      RatPolynomial r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RatPolynomial(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (c && vars_.find(c) != std::string_view::npos) {
      if (var_ && var_ != c) fail(std::string("mixed variables '") + var_ + "' and '" + c + "'");
      var_ = c;
      ++pos_;
      return RatPolynomial(IntPolynomial::variable());
    }
    if (!c) fail("unexpected end of input");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::string_view vars_;
  std::size_t pos_ = 0;
  char var_ = 0;
};

}  // namespace

RatPolynomial parse_polynomial(std::string_view text, std::string_view variables, char* used) {
  Parser p(text, variables);
  RatPolynomial r = p.run();
  if (used) *used = p.used();
  return r;
}

Rational parse_rational(std::string_view text) {
  RatPolynomial r = parse_polynomial(text, "");
  return r.is_zero() ? Rational(0) : r.leading();
}

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

}  // namespace arbor

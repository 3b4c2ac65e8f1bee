#pragma once

#include "arbor/algebra.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arbor {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), message_(what), position_(position) {}
  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

/// Polynomial text: integers, one variable letter drawn from `variables`,
/// '^' with a nonnegative integer exponent, + - * / and parentheses;
/// juxtaposition multiplies ("7t^4"). Division is only by nonzero constants.
/// Whitespace is ignored. `used` receives the variable letter seen, or 0.
RatPolynomial parse_polynomial(std::string_view text, std::string_view variables = "tx", char* used = nullptr);

/// A constant expression such as "-3/4".
Rational parse_rational(std::string_view text);

/// Splits on `sep`, trimming whitespace; empty items are dropped.
std::vector<std::string> split_list(std::string_view text, char sep = ';');

}  // namespace arbor

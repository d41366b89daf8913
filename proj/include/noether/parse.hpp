#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "noether/expr.hpp"
#include "noether/symbol.hpp"

namespace noether {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses infix text into a canonical Expr.
///
/// Precedence, tightest first: `^` (right associative), unary minus,
/// `*` `/` (left), `+` `-` (left). Functions: exp, log, sin, cos, sqrt.
/// Decimal literals are read as exact rationals ("0.5" is 1/2).
Expr parse(std::string_view src, const SymbolTable& ctx);

/// Exact rational value of a decimal or integer literal ("1.25e-3").
Rational parse_decimal(std::string_view literal);

}  // namespace noether

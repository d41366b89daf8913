#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "noether/symbol.hpp"

namespace noether {

using Rational = mpq_class;

enum class NodeKind : std::uint8_t { number, symbol, pow, func, mul, add };
enum class FuncKind : std::uint8_t { exp, log, sin, cos };

std::string_view to_string(FuncKind f);

/// Immutable, always-canonical expression tree.
///
/// Every constructor goes through the canonicalizing smart constructors, so a
/// live Expr is in normal form: sums and products flattened and sorted,
/// rational coefficients collected, products fully distributed over sums
/// raised to positive integer powers, at most one exp factor per product
/// (exp(a)exp(b) -> exp(a+b)), cos(a)^2 rewritten as 1 - sin(a)^2, and
/// sqrt(a) represented as a^(1/2). Structural equality of canonical forms is
/// therefore a sound (though not complete) zero test.
class Expr {
 public:
  Expr();  // zero
  Expr(int value);  // NOLINT(google-explicit-constructor)
  Expr(long value);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  Expr(const Symbol& symbol);  // NOLINT(google-explicit-constructor)

  NodeKind kind() const;
  bool is_number() const { return kind() == NodeKind::number; }
  bool is_symbol() const { return kind() == NodeKind::symbol; }
  bool is_add() const { return kind() == NodeKind::add; }
  bool is_mul() const { return kind() == NodeKind::mul; }
  bool is_pow() const { return kind() == NodeKind::pow; }
  bool is_func() const { return kind() == NodeKind::func; }
  bool is_func(FuncKind f) const;

  bool is_zero_literal() const;
  bool is_one() const;

  const Rational& number() const;
  const Symbol& symbol() const;
  FuncKind func() const;
  std::span<const Expr> args() const;
  // Pow accessors.
  const Expr& base() const;
  const Rational& exponent() const;

  std::size_t hash() const;
  // Cheap over-approximation of the set of symbols occurring in the tree.
  std::uint64_t symbol_mask() const;
  bool may_contain(const Symbol& s) const;
  std::size_t size() const;  // node count

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
};

/// Total order on canonical expressions; -1, 0 or 1.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};
struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

std::uint64_t symbol_bit(const Symbol& s);

// Smart constructors.
Expr make_add(std::vector<Expr> terms);
Expr make_mul(std::vector<Expr> factors);
Expr make_pow(const Expr& base, const Rational& exponent);
Expr make_func(FuncKind f, const Expr& arg);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

Expr pow(const Expr& base, const Rational& exponent);
Expr pow(const Expr& base, int exponent);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sqrt(const Expr& a);

/// Splits a canonical term into its rational coefficient and the remaining
/// monomial (1 for a bare number).
std::pair<Rational, Expr> split_coefficient(const Expr& term);

/// Top-level summands of a canonical expression (a single term when the
/// expression is not a sum; empty for zero).
std::vector<Expr> terms_of(const Expr& e);

std::string to_string(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace noether

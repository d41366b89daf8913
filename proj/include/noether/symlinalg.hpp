#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "noether/expr.hpp"

namespace noether {

using ExprVector = std::vector<Expr>;

class SymMatrix {
 public:
  SymMatrix() = default;
  SymMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  static SymMatrix identity(std::size_t n);
  static SymMatrix from_rows(const std::vector<ExprVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Expr& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Expr& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  ExprVector operator*(const ExprVector& v) const;
  SymMatrix transpose() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  ExprVector entries_;
};

struct NullBasis {
  std::vector<ExprVector> vectors;
  std::size_t rank = 0;
  // (row, column) of each pivot used by the elimination.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  // Pivots that are not manifestly nonvanishing (constant-rank caveat).
  std::vector<std::string> warnings;
};

class InconsistentSystem : public std::runtime_error {
 public:
  InconsistentSystem(const std::string& what, Expr residue)
      : std::runtime_error(what), residue_(std::move(residue)) {}
  const Expr& residue() const { return residue_; }

 private:
  Expr residue_;
};

struct LinearSolution {
  ExprVector particular;
  NullBasis homogeneous;
  // Right-hand sides left on rows whose coefficient part eliminated to zero;
  // all vanish (exactly, or under the caller's predicate).
  ExprVector residues;
};

/// Right kernel by fraction-free (Bareiss) elimination. Pivots prefer
/// nonzero constants, then the smallest expression. Vectors are cleared of
/// common denominators.
NullBasis null_space(const SymMatrix& m);
std::size_t rank(const SymMatrix& m);

/// General solution of M x = b over the field of rational functions.
LinearSolution solve_linear(const SymMatrix& m, const ExprVector& b);

/// As solve_linear, but a nonzero residue on an eliminated row is accepted
/// when `residue_vanishes` says so (consistency modulo constraints).
LinearSolution solve_linear_modulo(const SymMatrix& m, const ExprVector& b,
                                   const std::function<bool(const Expr&)>& residue_vanishes);

/// Multiplies the vector by the least common denominator of its entries.
ExprVector clear_vector_denominators(const ExprVector& v);

// Exact dense linear algebra over Q, used by coefficient matching.
using RationalRow = std::vector<Rational>;
using RationalMatrix = std::vector<RationalRow>;

std::optional<std::vector<Rational>> solve_rational(const RationalMatrix& a, const std::vector<Rational>& b,
                                                    std::size_t cols);
std::vector<std::vector<Rational>> rational_null_space(const RationalMatrix& a, std::size_t cols);

}  // namespace noether

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "noether/expr.hpp"

namespace noether {

class NotPolynomial : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Exponents = std::vector<int>;

/// Decomposes e as a polynomial in `vars` with coefficients free of them:
/// e = sum_k coeff_k * prod_i vars[i]^k_i. Throws NotPolynomial when some
/// factor involves a variable other than as a nonnegative integer power.
std::map<Exponents, Expr> coefficients_in(const Expr& e, const std::vector<Symbol>& vars);

/// Rebuilds prod_i vars[i]^k_i.
Expr monomial(const std::vector<Symbol>& vars, const Exponents& k);

/// Monomial part -> rational coefficient of a canonical expression.
std::map<Expr, Rational, ExprLess> term_map(const Expr& e);

/// q = a / b for monomials (coefficient-free terms); nullopt when q would
/// carry a negative power of anything other than an exponential.
std::optional<Expr> monomial_quotient(const Expr& a, const Expr& b);

/// Looks for multipliers c_i with target == sum_i c_i * generators[i] by
/// rational coefficient matching. Candidate multipliers are monomial
/// quotients of target terms by generator terms, closed under `rounds`
/// further rounds over the terms the candidates introduce.
std::optional<std::vector<Expr>> match_combination(const Expr& target, const std::vector<Expr>& generators,
                                                   int rounds = 1);

/// Terms depending only on t, parameters and gauge-function chains (the
/// "function of time alone" part), and the remainder.
std::pair<Expr, Expr> split_time_only(const Expr& e);

}  // namespace noether

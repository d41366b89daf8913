#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "noether/expr.hpp"

namespace noether {

/// Exact partial derivative. All symbols are independent jet coordinates,
/// so d(xdot)/dx = 0; gauge-chain members are independent of each other.
Expr diff(const Expr& e, const Symbol& s);

/// Explicit time partial including the formal chain d/dt eps^(n) = eps^(n+1).
Expr time_partial(const Expr& e);

class SubstitutionCycle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Bindings = std::map<Symbol, Expr>;

/// Simultaneous substitution followed by canonicalization. Throws
/// SubstitutionCycle when a bound symbol is reachable from its own image
/// through the bindings.
Expr substitute(const Expr& e, const Bindings& bindings);

std::set<Symbol> free_symbols(const Expr& e);
bool depends_on(const Expr& e, const Symbol& s);
bool depends_on_kind(const Expr& e, SymbolKind kind);

using Valuation = std::function<double(const Symbol&)>;
double evaluate(const Expr& e, const Valuation& value_of);

}  // namespace noether

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noether {

enum class SymbolKind {
  coordinate,
  velocity,
  acceleration,
  momentum,
  time,
  parameter,
  gauge_function_derivative,
  // Lagrange multipliers, evolution-field gauge parameters and the opaque
  // derivative atoms produced when a vector field acts on them.
  free_parameter,
};

std::string_view to_string(SymbolKind kind);

/// A named variable of the jet/phase-space chart. Two symbols are equal iff
/// their names are equal; the symbol table guarantees that a name is never
/// reused with a different kind.
class Symbol {
 public:
  Symbol(std::string name, SymbolKind kind, std::string base = {}, int order = 0);

  const std::string& name() const { return data_->name; }
  SymbolKind kind() const { return data_->kind; }
  // Coordinate (for velocity/acceleration/momentum) or gauge function this
  // symbol derives from; empty otherwise.
  const std::string& base() const { return data_->base; }
  int order() const { return data_->order; }

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.data_ == b.data_ || a.data_->name == b.data_->name;
  }
  friend bool operator<(const Symbol& a, const Symbol& b) { return a.name() < b.name(); }

 private:
  struct Data {
    std::string name;
    SymbolKind kind;
    std::string base;
    int order;
  };
  std::shared_ptr<const Data> data_;
};

// Chart-symbol factories. Naming is fixed by the expression grammar:
// x -> xdot, xddot, p_x; gauge chain eps, epsdot, epsddot, eps_d3, ...
Symbol coordinate_symbol(const std::string& name);
Symbol velocity_symbol(const std::string& coordinate);
Symbol acceleration_symbol(const std::string& coordinate);
Symbol momentum_symbol(const std::string& coordinate);
Symbol time_symbol();
Symbol parameter_symbol(const std::string& name);
Symbol gauge_symbol(const std::string& base, int order);
Symbol free_parameter_symbol(const std::string& name);
std::string gauge_symbol_name(const std::string& base, int order);

/// Successor in the gauge-function chain: d/dt eps^(n) = eps^(n+1).
Symbol next_gauge_derivative(const Symbol& s);

/// Identifier resolution for the parser. Frozen once a system is built.
class SymbolTable {
 public:
  SymbolTable();

  void add_coordinate(const std::string& name);
  void add_parameter(const std::string& name);
  void add_gauge_function(const std::string& base);
  void add_free_parameter(const std::string& name);

  std::optional<Symbol> lookup(std::string_view identifier) const;

  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const std::vector<std::string>& parameters() const { return parameters_; }
  const std::vector<std::string>& gauge_functions() const { return gauge_functions_; }

 private:
  void claim(const Symbol& s);

  std::map<std::string, Symbol, std::less<>> fixed_;
  std::vector<std::string> coordinates_;
  std::vector<std::string> parameters_;
  std::vector<std::string> gauge_functions_;
};

}  // namespace noether

#include "noether/symbol.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace noether {

std::string_view to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::coordinate: return "coordinate";
    case SymbolKind::velocity: return "velocity";
    case SymbolKind::acceleration: return "acceleration";
    case SymbolKind::momentum: return "momentum";
    case SymbolKind::time: return "time";
    case SymbolKind::parameter: return "parameter";
    case SymbolKind::gauge_function_derivative: return "gauge_function_derivative";
    case SymbolKind::free_parameter: return "free_parameter";
  }
  return "unknown";
}

Symbol::Symbol(std::string name, SymbolKind kind, std::string base, int order)
    : data_(std::make_shared<const Data>(Data{std::move(name), kind, std::move(base), order})) {}

Symbol coordinate_symbol(const std::string& name) { return Symbol(name, SymbolKind::coordinate, name, 0); }
Symbol velocity_symbol(const std::string& c) { return Symbol(c + "dot", SymbolKind::velocity, c, 1); }
Symbol acceleration_symbol(const std::string& c) { return Symbol(c + "ddot", SymbolKind::acceleration, c, 2); }
Symbol momentum_symbol(const std::string& c) { return Symbol("p_" + c, SymbolKind::momentum, c, 0); }
Symbol time_symbol() { return Symbol("t", SymbolKind::time); }
Symbol parameter_symbol(const std::string& name) { return Symbol(name, SymbolKind::parameter); }
Symbol free_parameter_symbol(const std::string& name) { return Symbol(name, SymbolKind::free_parameter); }

std::string gauge_symbol_name(const std::string& base, int order) {
  if (order == 0) return base;
  if (order == 1) return base + "dot";
  if (order == 2) return base + "ddot";
  return base + "_d" + std::to_string(order);
}

Symbol gauge_symbol(const std::string& base, int order) {
  if (order < 0) throw std::invalid_argument("negative gauge derivative order");
  return Symbol(gauge_symbol_name(base, order), SymbolKind::gauge_function_derivative, base, order);
}

Symbol next_gauge_derivative(const Symbol& s) {
  if (s.kind() != SymbolKind::gauge_function_derivative)
    throw std::invalid_argument("not a gauge-function symbol: " + s.name());
  return gauge_symbol(s.base(), s.order() + 1);
}

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

SymbolTable::SymbolTable() { claim(time_symbol()); }

void SymbolTable::claim(const Symbol& s) {
  if (!valid_identifier(s.name())) throw std::invalid_argument("invalid identifier '" + s.name() + "'");
  if (fixed_.count(s.name()) != 0) throw std::invalid_argument("identifier '" + s.name() + "' declared twice");
  fixed_.emplace(s.name(), s);
}

void SymbolTable::add_coordinate(const std::string& name) {
  claim(coordinate_symbol(name));
  claim(velocity_symbol(name));
  claim(acceleration_symbol(name));
  claim(momentum_symbol(name));
  coordinates_.push_back(name);
}

void SymbolTable::add_parameter(const std::string& name) {
  claim(parameter_symbol(name));
  parameters_.push_back(name);
}

void SymbolTable::add_gauge_function(const std::string& base) {
  // Orders 0..2 are claimed eagerly so collisions with other declarations
  // are caught; higher orders resolve on lookup.
  for (int k = 0; k <= 2; ++k) claim(gauge_symbol(base, k));
  gauge_functions_.push_back(base);
}

void SymbolTable::add_free_parameter(const std::string& name) { claim(free_parameter_symbol(name)); }

std::optional<Symbol> SymbolTable::lookup(std::string_view id) const {
  if (auto it = fixed_.find(id); it != fixed_.end()) return it->second;
  for (const auto& base : gauge_functions_) {
    if (id.size() > base.size() + 2 && id.substr(0, base.size()) == base &&
        id.substr(base.size(), 2) == "_d") {
      auto digits = id.substr(base.size() + 2);
      int order = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
      if (ec == std::errc() && ptr == digits.data() + digits.size() && order >= 0)
        return gauge_symbol(base, order);
    }
  }
  // Derivative atoms of free parameters along named vector fields.
  if (id.size() > 2 && id.substr(0, 2) == "D_" && valid_identifier(id))
    return free_parameter_symbol(std::string(id));
  return std::nullopt;
}

}  // namespace noether

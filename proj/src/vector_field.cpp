#include "noether/vector_field.hpp"

#include <set>
#include <stdexcept>

#include "noether/calculus.hpp"

namespace noether {

std::string_view to_string(Space s) { return s == Space::velocity ? "RxTQ" : "RxT*Q"; }

Expr VectorField::component(const Symbol& z) const {
  auto it = components.find(z);
  return it == components.end() ? Expr(0) : it->second;
}

Symbol derivative_atom(const std::string& field, const Symbol& s) {
  return free_parameter_symbol("D_" + field + "_" + s.name());
}

Expr apply(const VectorField& v, const Expr& f) {
  std::vector<Expr> parts;
  if (!v.time.is_zero_literal()) parts.push_back(v.time * time_partial(f));
  for (const auto& [z, c] : v.components)
    if (!c.is_zero_literal() && f.may_contain(z)) parts.push_back(c * diff(f, z));
  for (const auto& s : free_symbols(f))
    if (s.kind() == SymbolKind::free_parameter) parts.push_back(Expr(derivative_atom(v.name, s)) * diff(f, s));
  return make_add(std::move(parts));
}

VectorField lie_bracket(const VectorField& v, const VectorField& x, const std::string& name) {
  if (v.space != x.space) throw std::invalid_argument("lie_bracket: fields live on different spaces");
  VectorField out;
  out.space = v.space;
  out.name = name.empty() ? "[" + v.name + "," + x.name + "]" : name;
  std::set<Symbol> chart;
  for (const auto& [z, _] : v.components) chart.insert(z);
  for (const auto& [z, _] : x.components) chart.insert(z);
  out.time = apply(v, x.time) - apply(x, v.time);
  for (const auto& z : chart) {
    Expr c = apply(v, x.component(z)) - apply(x, v.component(z));
    if (!c.is_zero_literal()) out.components[z] = c;
  }
  std::set<Symbol> params(v.free_parameters.begin(), v.free_parameters.end());
  params.insert(x.free_parameters.begin(), x.free_parameters.end());
  out.free_parameters.assign(params.begin(), params.end());
  return out;
}

std::string to_string(const VectorField& v) {
  std::string s;
  auto add = [&](const Expr& c, const std::string& d) {
    if (c.is_zero_literal()) return;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")*d/d" + d;
  };
  add(v.time, "t");
  for (const auto& [z, c] : v.components) add(c, z.name());
  return s.empty() ? "0" : s;
}

}  // namespace noether

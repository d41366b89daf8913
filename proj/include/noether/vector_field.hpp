#pragma once

#include <map>
#include <string>
#include <vector>

#include "noether/expr.hpp"

namespace noether {

enum class Space { velocity, phase };  // R x TQ, R x T*Q

std::string_view to_string(Space s);

/// A first-order differential operator
///   time * d/dt + sum_z components[z] * d/dz
/// where d/dt also advances gauge-function chains. Free parameters occurring
/// in the argument are treated as unknown functions: the field's action on a
/// free parameter s is the opaque atom D_<name>_<s>.
struct VectorField {
  Space space = Space::velocity;
  std::string name;
  Expr time;
  std::map<Symbol, Expr> components;
  std::vector<Symbol> free_parameters;

  Expr component(const Symbol& z) const;
};

Symbol derivative_atom(const std::string& field, const Symbol& s);

Expr apply(const VectorField& v, const Expr& f);

/// [V, X] := V o X - X o V, evaluated on every chart symbol either field
/// moves and on t.
VectorField lie_bracket(const VectorField& v, const VectorField& x, const std::string& name = {});

std::string to_string(const VectorField& v);

}  // namespace noether

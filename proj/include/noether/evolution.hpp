#pragma once

#include "noether/legendre.hpp"
#include "noether/system_model.hpp"
#include "noether/vector_field.hpp"

namespace noether {

/// {f, g} = df/dq dg/dp - df/dp dg/dq.
Expr poisson_bracket(const SystemModel& sys, const Expr& f, const Expr& g);

/// K.h = FL*(dh/dt) + FL*(dh/dq) qdot + FL*(dh/dp) dL/dq.
Expr apply_K(const SystemModel& sys, const LegendreMap& map, const Expr& h);

/// d/dt FL*(h) + [L]_i FL*(dh/dp_i); lives on second-order jets and agrees
/// with apply_K identically.
Expr apply_K_el_form(const SystemModel& sys, const LegendreMap& map, const Expr& h);

/// FL*(dh/dt) + FL*{h, H} + FL*{h, phi_mu} v^mu.
Expr apply_K_h_form(const SystemModel& sys, const LegendreMap& map, const Expr& h);

/// X^H = d/dt + {-, H} + lambda^mu {-, phi_mu}.
VectorField hamiltonian_evolution_field(const SystemModel& sys, const LegendreMap& map);

/// Hamiltonian vector field {-, g} on phase space (no time component).
VectorField hamiltonian_vector_field(const SystemModel& sys, const Expr& g, const std::string& name);

}  // namespace noether

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noether/calculus.hpp"
#include "noether/system_model.hpp"

namespace noether {

class LegendreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LegendreMap {
  Bindings momentum_bindings;  // p_i -> p^_i(q, qdot)
  ExprVector primary;          // phi_mu(q, p)
  Expr hamiltonian;
  ExprVector v;                // v^mu(q, qdot)
  // Velocities expressed through (q, p) by the elimination, when derived.
  Bindings velocity_solutions;
  bool constraints_derived = false;
  bool hamiltonian_derived = false;
  std::vector<std::string> notes;
};

Expr pull_back(const LegendreMap& map, const Expr& h);

struct Projectability {
  bool projectable = true;
  ExprVector residuals;  // Gamma_mu . f
};
Projectability is_projectable(const SystemModel& sys, const Expr& f);

/// Eliminates velocities from the momentum bindings (triangular/affine
/// class). Fills `primary` and `velocity_solutions`; throws LegendreError
/// outside the supported class.
void derive_primary_constraints(const SystemModel& sys, LegendreMap& map);

/// Energy rewritten through the velocity solutions; nullopt when velocities
/// survive.
std::optional<Expr> derive_hamiltonian(const SystemModel& sys, const LegendreMap& map);

struct HamiltonianCheck {
  bool ok = false;
  Expr residual;          // FL*(H) - energy
  bool modulo_primaries = false;
};
HamiltonianCheck verify_hamiltonian(const SystemModel& sys, const LegendreMap& map, const Expr& h);

Expr lagrangian_energy(const SystemModel& sys);

/// Checks FL*(phi_mu) = 0 and independence of the constraints, then
/// replaces the kernel basis by gamma_mu = FL*(d phi_mu / dp).
void align_kernel(SystemModel& sys, const LegendreMap& map);

/// Solves qdot = FL*(dH/dp) + FL*(d phi_mu/dp) v^mu and checks
/// Gamma_nu . v^mu = delta.
void solve_v_multipliers(const SystemModel& sys, LegendreMap& map);

/// Complete Legendre step. `hamiltonian`/`primary` override the derivation
/// and are verified instead.
LegendreMap build_legendre(SystemModel& sys, const std::optional<Expr>& hamiltonian,
                           const std::optional<ExprVector>& primary);

}  // namespace noether

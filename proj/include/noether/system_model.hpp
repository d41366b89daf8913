#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noether/expr.hpp"
#include "noether/symlinalg.hpp"
#include "noether/vector_field.hpp"

namespace noether {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tangent-space side of a first-order Lagrangian system.
struct SystemModel {
  std::string name;
  SymbolTable symbols;
  std::vector<Symbol> q, qdot, qddot, p;
  Expr lagrangian;

  ExprVector momenta;         // p^_i = dL/dqdot^i
  SymMatrix hessian;          // W_ij = dp^_i/dqdot^j
  ExprVector alpha;           // dL/dq^i - qdot^j d p^_i/dq^j
  ExprVector euler_lagrange;  // [L]_i = alpha_i - W_ij qddot^j
  NullBasis kernel;           // gamma_mu, possibly re-based by the Legendre step

  // Multipliers of X^H and X^L, one per kernel direction.
  std::vector<Symbol> lambda, eta;
  std::vector<std::string> warnings;

  std::size_t dim() const { return q.size(); }
  const std::vector<ExprVector>& gammas() const { return kernel.vectors; }
};

/// Builds every derived tangent-space object and checks the defining
/// invariants. `symbols` must already declare coordinates, parameters and
/// gauge functions; multiplier symbols are added here.
SystemModel build_system(std::string name, SymbolTable symbols, const Expr& lagrangian);

/// d/dt on R x TQ, landing on second-order jets.
Expr total_time_derivative(const SystemModel& sys, const Expr& f);

/// Gamma_mu = gamma_mu^i d/dqdot^i.
VectorField kernel_field(const SystemModel& sys, std::size_t mu);

/// chi_mu = alpha . gamma_mu.
ExprVector primary_lagrangian_constraints(const SystemModel& sys);

struct Accelerations {
  ExprVector a;  // particular solution of W a = alpha
  ExprVector residues;
};

/// Solves W a = alpha, accepting eliminated rows whose residue vanishes on
/// the primary Lagrangian constraint surface.
Accelerations solve_accelerations(const SystemModel& sys, const std::function<bool(const Expr&)>& weakly_zero);

/// X^L = d/dt + qdot d/dq + a d/dqdot + eta^mu Gamma_mu.
VectorField lagrangian_evolution_field(const SystemModel& sys, const Accelerations& acc, bool with_eta = true);

}  // namespace noether

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noether/legendre.hpp"
#include "noether/system_model.hpp"

namespace noether {

enum class Side { hamiltonian, lagrangian };

struct Constraint {
  Expr expr;
  // Solved form: expr = k * (solved_for - solved_image), k rational.
  std::optional<Symbol> solved_for;
  Expr solved_image;
  Rational solved_scale;
  std::string origin;
  int level = 0;
};

class ConstraintSet {
 public:
  explicit ConstraintSet(Side side = Side::hamiltonian) : side_(side) {}

  Side side() const { return side_; }
  /// Appends at `level`, detecting a solved form when the expression is
  /// linear with constant coefficient in a chart symbol not already used.
  void add(const Expr& e, std::string origin, int level);

  const std::vector<Constraint>& all() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  ExprVector exprs() const;
  int depth() const;  // highest level + 1
  std::vector<Constraint> level(int n) const;
  ConstraintSet up_to_level(int n) const;

 private:
  Side side_;
  std::vector<Constraint> items_;
};

class UnsupportedReduction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Reduction {
  Expr normal_form;
  ExprVector combination;  // one coefficient per constraint, in all() order
  bool reduced_to_zero() const;
};

/// f = normal_form + sum_k combination[k] * constraint[k], exactly.
Reduction reduce_mod(const Expr& f, const ConstraintSet& cs);
bool weak_equals(const Expr& f, const Expr& g, const ConstraintSet& cs);
bool weakly_zero(const Expr& f, const ConstraintSet& cs);

class InconsistentDynamics : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Stabilization {
  ConstraintSet chain{Side::hamiltonian};
  // Residues linear in the multipliers lambda; each must vanish weakly.
  ExprVector multiplier_determinations;
  int generations = 0;
};

Stabilization stabilize_hamiltonian(const SystemModel& sys, const LegendreMap& map, int max_depth = 10);

ConstraintSet lagrangian_constraint_chain(const SystemModel& sys, const LegendreMap& map, const ConstraintSet& ham);

struct FirstClassCheck {
  bool first_class = true;
  // brackets[mu] = {f, phi_mu}; d[mu][nu] with brackets[mu] = d[mu][nu] phi_nu.
  ExprVector brackets;
  std::vector<ExprVector> d;
  ExprVector residues;
};

FirstClassCheck is_first_class_wrt_primaries(const SystemModel& sys, const Expr& f, const ConstraintSet& primaries);

}  // namespace noether

#include "noether/analysis.hpp"

#include "noether/zero.hpp"

namespace noether {

Analysis analyze_system(SystemModel sys, const std::optional<Expr>& hamiltonian,
                        const std::optional<ExprVector>& primary, const AnalysisOptions& options) {
  Analysis an;
  an.options = options;
  an.map = build_legendre(sys, hamiltonian, primary);
  an.sys = std::move(sys);
  const SystemModel& s = an.sys;

  an.stabilization = stabilize_hamiltonian(s, an.map, options.max_stabilization_depth);
  for (const auto& phi : an.map.primary) an.primaries.add(phi, "primary", 0);
  an.lagrangian_chain = lagrangian_constraint_chain(s, an.map, an.stabilization.chain);
  for (const auto& phi : an.map.primary) an.plc.add(apply_K(s, an.map, phi), "K.phi", 0);
  an.chi_from_alpha = primary_lagrangian_constraints(s);
  for (std::size_t mu = 0; mu < an.chi_from_alpha.size(); ++mu)
    if (!is_zero(an.chi_from_alpha[mu] - an.plc.all()[mu].expr))
      throw ModelError("alpha . gamma and K . phi disagree for constraint " + std::to_string(mu));
  for (const auto& c : an.plc.all())
    if (!depends_on_kind(c.expr, SymbolKind::velocity)) an.chi_restricts_configuration = true;
  if (an.chi_restricts_configuration)
    an.warnings.push_back("a primary Lagrangian constraint restricts the configuration variables alone");

  const ConstraintSet& plc = an.plc;
  an.accelerations = solve_accelerations(s, [&plc](const Expr& r) { return weakly_zero(r, plc); });
  an.xh = hamiltonian_evolution_field(s, an.map);
  an.xl = lagrangian_evolution_field(s, an.accelerations, true);
  an.xl0 = lagrangian_evolution_field(s, an.accelerations, false);
  for (const auto& w : s.warnings) an.warnings.push_back(w);
  return an;
}

}  // namespace noether

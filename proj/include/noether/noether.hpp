#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "noether/analysis.hpp"

namespace noether {

enum class Verdict { pass, fail, partial_nonprojectable };
std::string_view to_string(Verdict v);

struct GeneratorCandidate {
  std::string name;
  Expr g_h;  // G^H(t, q, p), may contain gauge-function chains
  Expr g_l;  // FL*(G^H)
  ExprVector delta_h_q, delta_h_p;  // {q, G}, {p, G}
  ExprVector delta_l_q, delta_l_qdot, delta_bar_l_qdot;
  VectorField v_h, v_l, v_l_bar;
};

GeneratorCandidate make_generator(const Analysis& an, std::string name, const Expr& g);

struct KConditionResult {
  Verdict verdict = Verdict::fail;
  Expr k_g;        // K . G^H
  Expr time_only;  // f(t) removed by redefining G^H -> G^H - int f dt
  Expr residual;   // what is left after the allowance (and reduction mod plc)
  ExprVector plc_combination;
};
KConditionResult check_K_condition(const Analysis& an, const GeneratorCandidate& g);

struct PhaseSpaceResult {
  Verdict verdict = Verdict::fail;
  bool cond1 = false, cond2 = false;
  Expr cond2_expr;  // dG/dt + {G, H}
  Expr cond2_time_only;
  Reduction cond2_reduction;
  FirstClassCheck cond1_check;
  // [V^H, X^H] compared with {-, c^mu phi_mu} on the primary surface.
  VectorField commutator;
  bool commutator_weakly_hamiltonian = false;
  ExprVector commutator_coefficients;
};
PhaseSpaceResult check_phase_space(const Analysis& an, const GeneratorCandidate& g);

struct VelocitySpaceResult {
  Verdict verdict = Verdict::fail;
  // (a) V^L . FL*(h) = FL*{h, G} and projectable, for h in q, p.
  bool projectable = false;
  ExprVector projectability_residuals;
  // (b) V^L . chi_mu = plc.
  bool tangent = false;
  std::vector<ExprVector> tangency_coefficients;
  ExprVector tangency_residues;
  // (c) [V^L, X^L] = plc + beta^mu Gamma_mu.
  bool commutator_ok = false;
  VectorField commutator;
  ExprVector beta;
  ExprVector commutator_residues;
  // Sufficiency conditions on K . G.
  bool nonecsuf = false, necsuf = false;
  bool sufficiency_gap = false;
  bool chi_restricts_configuration = false;
};
VelocitySpaceResult check_velocity_space(const Analysis& an, const GeneratorCandidate& g);

struct CommutationProbe {
  std::string label;
  Expr h;
  Expr difference;     // delta^L (K . h) - K . (delta^H h)
  Expr fl_difference;  // delta^L FL*(h) - FL*(delta^H h)
  bool theorem3_ok = false;
};

struct CommutationResult {
  Verdict verdict = Verdict::fail;
  std::vector<CommutationProbe> probes;
  bool theorem3_ok = true;
  // delta^L(K.p_i) - K.delta^H p_i - d(K.G)/dq^i and the velocity analogue.
  ExprVector kg_q_residuals, kg_v_residuals;
};
CommutationResult check_commutation_with_K(const Analysis& an, const GeneratorCandidate& g, std::uint64_t seed,
                                           int random_probes = 10);

struct BarDeltaResult {
  Verdict verdict = Verdict::fail;
  Expr delta_bar_l;  // Vbar^L . L
  Expr delta_l;      // V^L . L
  Expr boundary;     // FL*(p delta^H q - G^H)
  Expr residual;     // delta_bar_l - d/dt boundary, after the f(t) allowance
  Expr time_only;
  bool noether_identity = false;
  Expr noether_identity_residual;
  bool bar_relation = false;
};
BarDeltaResult check_bar_delta_total_derivative(const Analysis& an, const GeneratorCandidate& g);

struct NoetherReport {
  GeneratorCandidate generator;
  KConditionResult k;
  PhaseSpaceResult phase;
  VelocitySpaceResult velocity;
  CommutationResult commutation;
  BarDeltaResult bar;
  // K-condition PASS <=> phase-space PASS <=> commutation PASS.
  bool equivalence_consistent = false;
  bool conserved_quantity_projectable = false;  // Gamma_mu . G^L == 0
  bool noether() const { return k.verdict == Verdict::pass; }
};
NoetherReport analyze_generator(const Analysis& an, const GeneratorCandidate& g, std::uint64_t seed);

struct GaugeSolution {
  bool found = false;
  Expr seed;
  int depth = 1;
  int degree = -1;  // ansatz degree at which the solution appeared
  GeneratorCandidate candidate;
  ExprVector components;  // G_k multiplying eps^(depth-k)
  std::string obstruction;
  Expr obstruction_expr;
};
GaugeSolution solve_gauge_generator(const Analysis& an, const Expr& seed, int depth, int max_degree);

struct StructureFunctions {
  bool ok = false;
  // c[i][j][k] with V^L_j . G^L_i = FL*(C^k_ij) G^L_k.
  std::vector<std::vector<ExprVector>> c;
  bool constant = false;
  bool projection_identity = false;
  bool lie_algebra = false;  // only meaningful when constant
  std::string message;
  Expr residual;
};
StructureFunctions structure_functions(const Analysis& an, const std::vector<GeneratorCandidate>& gs,
                                       std::uint64_t seed);

/// Random polynomial in (q, p) with small integer coefficients.
Expr random_phase_polynomial(const SystemModel& sys, std::mt19937_64& rng, int max_degree = 3, int terms = 4);

/// Renames the gauge-function chain `from` to `to` up to `max_order`.
Expr rename_gauge_function(const Expr& e, const std::string& from, const std::string& to, int max_order = 8);

}  // namespace noether

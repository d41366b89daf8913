#include "noether/noether.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "noether/terms.hpp"
#include "noether/zero.hpp"

namespace noether {

namespace {

bool all_zero(const ExprVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Expr& e) { return is_zero(e); });
}

std::vector<Symbol> phase_chart(const SystemModel& sys) {
  std::vector<Symbol> out(sys.q);
  out.insert(out.end(), sys.p.begin(), sys.p.end());
  return out;
}

// Splits off the f(t) part; returns (time_only, rest).
std::pair<Expr, Expr> time_allowance(const Expr& e) {
  if (is_zero(e)) return {Expr(0), Expr(0)};
  return split_time_only(e);
}

Expr dot(const ExprVector& a, const ExprVector& b) {
  std::vector<Expr> parts;
  for (std::size_t i = 0; i < a.size(); ++i) parts.push_back(a[i] * b[i]);
  return make_add(std::move(parts));
}

void collect_exp_args(const Expr& e, std::set<Expr, ExprLess>& out) {
  if (e.is_func(FuncKind::exp)) out.insert(e.args()[0]);
  if (e.is_number() || e.is_symbol()) return;
  if (e.is_pow()) {
    collect_exp_args(e.base(), out);
    return;
  }
  for (const auto& a : e.args()) collect_exp_args(a, out);
}

void monomials_up_to(const std::vector<Symbol>& vars, int degree, std::size_t from, Expr acc,
                     std::vector<Expr>& out) {
  out.push_back(acc);
  if (degree == 0) return;
  for (std::size_t i = from; i < vars.size(); ++i) monomials_up_to(vars, degree - 1, i, acc * Expr(vars[i]), out);
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "PASS";
    case Verdict::fail:
      return "FAIL";
    case Verdict::partial_nonprojectable:
      return "PARTIAL-NONPROJECTABLE";
  }
  return "?";
}

GeneratorCandidate make_generator(const Analysis& an, std::string name, const Expr& g) {
  const SystemModel& sys = an.sys;
  for (auto k : {SymbolKind::velocity, SymbolKind::acceleration, SymbolKind::free_parameter})
    if (depends_on_kind(g, k))
      throw std::invalid_argument("generator " + name + " must be a function of (t, q, p): " + to_string(g));
  GeneratorCandidate c;
  c.name = std::move(name);
  c.g_h = g;
  c.g_l = pull_back(an.map, g);
  c.v_h = hamiltonian_vector_field(sys, g, "VH");
  c.v_h.free_parameters = sys.lambda;
  c.v_l.space = c.v_l_bar.space = Space::velocity;
  c.v_l.name = "VL";
  c.v_l_bar.name = "VLbar";
  c.v_l.free_parameters = sys.eta;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    c.delta_h_q.push_back(diff(g, sys.p[i]));
    c.delta_h_p.push_back(-diff(g, sys.q[i]));
    c.delta_l_q.push_back(pull_back(an.map, c.delta_h_q[i]));
    c.delta_l_qdot.push_back(apply_K(sys, an.map, c.delta_h_q[i]));
    c.delta_bar_l_qdot.push_back(total_time_derivative(sys, c.delta_l_q[i]));
    auto put = [](VectorField& v, const Symbol& z, const Expr& e) {
      if (!e.is_zero_literal()) v.components[z] = e;
    };
    put(c.v_l, sys.q[i], c.delta_l_q[i]);
    put(c.v_l, sys.qdot[i], c.delta_l_qdot[i]);
    put(c.v_l_bar, sys.q[i], c.delta_l_q[i]);
    put(c.v_l_bar, sys.qdot[i], c.delta_bar_l_qdot[i]);
  }
  return c;
}

KConditionResult check_K_condition(const Analysis& an, const GeneratorCandidate& g) {
  KConditionResult r;
  r.k_g = apply_K(an.sys, an.map, g.g_h);
  auto [time_only, rest] = time_allowance(r.k_g);
  r.time_only = time_only;
  r.residual = rest;
  if (is_zero(rest)) {
    r.residual = Expr(0);
    r.verdict = Verdict::pass;
    return r;
  }
  Reduction red = reduce_mod(rest, an.plc);
  r.plc_combination = red.combination;
  r.verdict = red.reduced_to_zero() ? Verdict::partial_nonprojectable : Verdict::fail;
  return r;
}

PhaseSpaceResult check_phase_space(const Analysis& an, const GeneratorCandidate& g) {
  const SystemModel& sys = an.sys;
  PhaseSpaceResult r;
  r.cond2_expr = time_partial(g.g_h) + poisson_bracket(sys, g.g_h, an.map.hamiltonian);
  auto [time_only, rest] = time_allowance(r.cond2_expr);
  r.cond2_time_only = time_only;
  r.cond2_reduction = reduce_mod(rest, an.primaries);
  r.cond2 = r.cond2_reduction.reduced_to_zero();
  r.cond1_check = is_first_class_wrt_primaries(sys, g.g_h, an.primaries);
  r.cond1 = r.cond1_check.first_class;
  r.verdict = r.cond1 && r.cond2 ? Verdict::pass : Verdict::fail;

  // [V^H, X^H] . z = c^mu {z, phi_mu} weakly.
  r.commutator = lie_bracket(g.v_h, an.xh);
  const auto chart = phase_chart(sys);
  const auto& phis = an.map.primary;
  SymMatrix m(chart.size(), phis.size());
  ExprVector b;
  for (std::size_t i = 0; i < chart.size(); ++i) {
    for (std::size_t mu = 0; mu < phis.size(); ++mu) m(i, mu) = poisson_bracket(sys, Expr(chart[i]), phis[mu]);
    b.push_back(r.commutator.component(chart[i]));
  }
  const ConstraintSet& prim = an.primaries;
  try {
    LinearSolution s = solve_linear_modulo(m, b, [&prim](const Expr& e) { return weakly_zero(e, prim); });
    r.commutator_coefficients = s.particular;
    r.commutator_weakly_hamiltonian = true;
  } catch (const InconsistentSystem&) {
    r.commutator_weakly_hamiltonian = false;
  } catch (const UnsupportedReduction&) {
    r.commutator_weakly_hamiltonian = false;
  }
  return r;
}

VelocitySpaceResult check_velocity_space(const Analysis& an, const GeneratorCandidate& g) {
  const SystemModel& sys = an.sys;
  VelocitySpaceResult r;
  r.chi_restricts_configuration = an.chi_restricts_configuration;

  r.projectable = true;
  for (const auto& z : phase_chart(sys)) {
    Expr moved = apply(g.v_l, pull_back(an.map, Expr(z)));
    Projectability pr = is_projectable(sys, moved);
    for (const auto& res : pr.residuals) r.projectability_residuals.push_back(res);
    if (!pr.projectable) r.projectable = false;
    if (!is_zero(moved - pull_back(an.map, poisson_bracket(sys, Expr(z), g.g_h)))) r.projectable = false;
  }

  r.tangent = true;
  for (const auto& c : an.plc.all()) {
    Reduction red = reduce_mod(apply(g.v_l, c.expr), an.plc);
    r.tangency_coefficients.push_back(red.combination);
    r.tangency_residues.push_back(red.normal_form);
    if (!red.reduced_to_zero()) r.tangent = false;
  }

  r.commutator = lie_bracket(g.v_l, an.xl);
  r.commutator_ok = true;
  const ConstraintSet& plc = an.plc;
  auto weak = [&plc](const Expr& e) { return weakly_zero(e, plc); };
  for (const auto& q : sys.q) {
    Expr c = r.commutator.component(q);
    if (!weak(c)) {
      r.commutator_ok = false;
      r.commutator_residues.push_back(c);
    }
  }
  const auto& gam = sys.gammas();
  SymMatrix m(sys.dim(), gam.size());
  ExprVector b;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    for (std::size_t mu = 0; mu < gam.size(); ++mu) m(i, mu) = gam[mu][i];
    b.push_back(r.commutator.component(sys.qdot[i]));
  }
  try {
    LinearSolution s = solve_linear_modulo(m, b, weak);
    r.beta = s.particular;
  } catch (const InconsistentSystem& e) {
    r.commutator_ok = false;
    r.commutator_residues.push_back(e.residue());
  } catch (const UnsupportedReduction&) {
    r.commutator_ok = false;
  }

  Expr kg = apply_K(sys, an.map, g.g_h);
  bool dv = true, dq_exact = true, dq_weak = true;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    if (!is_zero(diff(kg, sys.qdot[i]))) dv = false;
    Expr dq = diff(kg, sys.q[i]);
    if (!is_zero(dq)) {
      dq_exact = false;
      if (!weak(dq)) dq_weak = false;
    }
  }
  r.nonecsuf = dv && dq_weak;
  r.necsuf = dv && dq_exact;
  r.sufficiency_gap = r.nonecsuf && !r.necsuf;
  r.verdict = r.projectable && r.tangent && r.commutator_ok ? Verdict::pass : Verdict::fail;
  return r;
}

CommutationResult check_commutation_with_K(const Analysis& an, const GeneratorCandidate& g, std::uint64_t seed,
                                           int random_probes) {
  const SystemModel& sys = an.sys;
  const LegendreMap& map = an.map;
  CommutationResult r;
  Expr kg = apply_K(sys, map, g.g_h);
  ExprVector dkg_q, dkg_v;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    dkg_q.push_back(diff(kg, sys.q[i]));
    dkg_v.push_back(diff(kg, sys.qdot[i]));
  }

  std::vector<std::pair<std::string, Expr>> family;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    Expr q(sys.q[i]), p(sys.p[i]);
    family.emplace_back(sys.q[i].name(), q);
    family.emplace_back(sys.p[i].name(), p);
    family.emplace_back(sys.q[i].name() + "^2/2", q * q / Expr(2));
    family.emplace_back(sys.q[i].name() + "*" + sys.p[i].name(), q * p);
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < random_probes; ++k)
    family.emplace_back("random" + std::to_string(k + 1), random_phase_polynomial(sys, rng));

  bool all = true;
  for (auto& [label, h] : family) {
    CommutationProbe pr;
    pr.label = label;
    pr.h = h;
    Expr delta_h = poisson_bracket(sys, h, g.g_h);
    pr.difference = apply(g.v_l, apply_K(sys, map, h)) - apply_K(sys, map, delta_h);
    pr.fl_difference = apply(g.v_l, pull_back(map, h)) - pull_back(map, delta_h);
    ExprVector fl_dh, k_dh;
    for (std::size_t i = 0; i < sys.dim(); ++i) {
      Expr dh = diff(h, sys.p[i]);
      fl_dh.push_back(pull_back(map, dh));
      k_dh.push_back(apply_K(sys, map, dh));
    }
    bool t_fl = is_zero(pr.fl_difference - dot(fl_dh, dkg_v));
    bool t_k = is_zero(pr.difference - dot(k_dh, dkg_v) - dot(fl_dh, dkg_q));
    pr.theorem3_ok = t_fl && t_k;
    if (!pr.theorem3_ok) r.theorem3_ok = false;
    if (!is_zero(pr.difference)) all = false;
    r.probes.push_back(std::move(pr));
  }

  for (std::size_t i = 0; i < sys.dim(); ++i) {
    Expr kp = apply_K(sys, map, Expr(sys.p[i]));
    r.kg_q_residuals.push_back(apply(g.v_l, kp) - apply_K(sys, map, g.delta_h_p[i]) - dkg_q[i]);
    r.kg_v_residuals.push_back(apply(g.v_l, sys.momenta[i]) - pull_back(map, g.delta_h_p[i]) - dkg_v[i]);
  }
  if (!all_zero(r.kg_q_residuals) || !all_zero(r.kg_v_residuals)) r.theorem3_ok = false;
  r.verdict = all ? Verdict::pass : Verdict::fail;
  return r;
}

BarDeltaResult check_bar_delta_total_derivative(const Analysis& an, const GeneratorCandidate& g) {
  const SystemModel& sys = an.sys;
  BarDeltaResult r;
  r.delta_bar_l = apply(g.v_l_bar, sys.lagrangian);
  r.delta_l = apply(g.v_l, sys.lagrangian);
  std::vector<Expr> f{-g.g_h};
  for (std::size_t i = 0; i < sys.dim(); ++i) f.push_back(Expr(sys.p[i]) * g.delta_h_q[i]);
  r.boundary = pull_back(an.map, make_add(std::move(f)));
  auto [time_only, rest] = time_allowance(r.delta_bar_l - total_time_derivative(sys, r.boundary));
  r.time_only = time_only;
  r.residual = is_zero(rest) ? Expr(0) : rest;
  r.verdict = r.residual.is_zero_literal() ? Verdict::pass : Verdict::fail;

  // [L]_i delta^L q^i + dG^L/dt = K.G, so the identity holds up to the same f(t).
  auto [kg_time, kg_rest] = time_allowance(apply_K(sys, an.map, g.g_h));
  (void)kg_rest;
  r.noether_identity_residual =
      dot(sys.euler_lagrange, g.delta_l_q) + total_time_derivative(sys, g.g_l) - kg_time;
  r.noether_identity = is_zero(r.noether_identity_residual);
  if (r.noether_identity) r.noether_identity_residual = Expr(0);

  r.bar_relation = true;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    std::vector<Expr> parts{g.delta_bar_l_qdot[i] - g.delta_l_qdot[i]};
    for (std::size_t j = 0; j < sys.dim(); ++j)
      parts.push_back(sys.euler_lagrange[j] * pull_back(an.map, diff(g.delta_h_q[i], sys.p[j])));
    if (!is_zero(make_add(std::move(parts)))) r.bar_relation = false;
  }
  return r;
}

NoetherReport analyze_generator(const Analysis& an, const GeneratorCandidate& g, std::uint64_t seed) {
  NoetherReport r;
  r.generator = g;
  r.k = check_K_condition(an, g);
  r.phase = check_phase_space(an, g);
  r.velocity = check_velocity_space(an, g);
  r.commutation = check_commutation_with_K(an, g, seed);
  r.bar = check_bar_delta_total_derivative(an, g);
  bool k = r.k.verdict == Verdict::pass;
  r.equivalence_consistent =
      k == (r.phase.verdict == Verdict::pass) && k == (r.commutation.verdict == Verdict::pass);
  r.conserved_quantity_projectable = is_projectable(an.sys, g.g_l).projectable;
  return r;
}

GaugeSolution solve_gauge_generator(const Analysis& an, const Expr& seed, int depth, int max_degree) {
  const SystemModel& sys = an.sys;
  if (an.primaries.empty())
    throw std::invalid_argument("solve_gauge_generator: the system has no primary constraints");
  if (sys.symbols.gauge_functions().empty())
    throw std::invalid_argument("solve_gauge_generator: no gauge function declared");
  if (depth < 1) throw std::invalid_argument("solve_gauge_generator: depth must be at least 1");
  const std::string& eps = sys.symbols.gauge_functions().front();
  auto eps_k = [&](int order) { return Expr(gauge_symbol(eps, order)); };

  GaugeSolution out;
  out.seed = seed;
  out.depth = depth;
  const ConstraintSet& chain = an.hamiltonian_chain();

  std::set<Symbol> solved;
  for (const auto& c : chain.all())
    if (c.solved_for) solved.insert(*c.solved_for);
  std::vector<Symbol> vars;
  for (const auto& z : phase_chart(sys))
    if (solved.count(z) == 0) vars.push_back(z);

  std::set<Expr, ExprLess> exp_args;
  collect_exp_args(sys.lagrangian, exp_args);
  collect_exp_args(an.map.hamiltonian, exp_args);
  collect_exp_args(seed, exp_args);
  for (const auto& c : chain.all()) collect_exp_args(c.expr, exp_args);
  std::set<Expr, ExprLess> factor_set{Expr(1)};
  for (const auto& a : exp_args) {
    factor_set.insert(exp(a));
    factor_set.insert(exp(-a));
  }
  const std::vector<Expr> exp_factors(factor_set.begin(), factor_set.end());

  const Expr lead = eps_k(depth) * seed;
  const Expr k_lead = apply_K(sys, an.map, lead);

  for (int degree = 0; degree <= max_degree; ++degree) {
    std::vector<Expr> monos;
    monomials_up_to(vars, degree, 0, Expr(1), monos);
    std::vector<Expr> basis;
    for (const auto& e : exp_factors)
      for (const auto& mnm : monos) basis.push_back(e * mnm);

    // Column layout: f-part (G_0 = f seed) first, then b_{k,m,j}.
    std::vector<Expr> columns;
    std::vector<int> column_slot;  // 0 for G_0, k for G_k
    for (const auto& bj : basis) {
      columns.push_back(eps_k(depth) * bj * seed);
      column_slot.push_back(0);
    }
    for (int k = 1; k <= depth; ++k)
      for (const auto& phi : chain.exprs())
        for (const auto& bj : basis) {
          columns.push_back(eps_k(depth - k) * bj * phi);
          column_slot.push_back(k);
        }
    const std::size_t nf = basis.size();

    std::map<Expr, std::size_t, ExprLess> row_of;
    std::vector<std::map<Expr, Rational, ExprLess>> col_terms;
    for (const auto& c : columns) {
      col_terms.push_back(term_map(apply_K(sys, an.map, c)));
      for (const auto& [mono, _] : col_terms.back()) row_of.emplace(mono, row_of.size());
    }
    auto lead_terms = term_map(k_lead);
    for (const auto& [mono, _] : lead_terms) row_of.emplace(mono, row_of.size());

    auto matrix = [&](std::size_t first) {
      RationalMatrix a(row_of.size(), RationalRow(columns.size() - first));
      for (std::size_t j = first; j < columns.size(); ++j)
        for (const auto& [mono, v] : col_terms[j]) a[row_of.at(mono)][j - first] = v;
      return a;
    };
    auto assemble = [&](const std::vector<Rational>& x, std::size_t first, bool with_lead) {
      std::vector<std::vector<Expr>> parts(depth + 1);
      if (with_lead) parts[0].push_back(seed);
      for (std::size_t j = first; j < columns.size(); ++j) {
        const Rational& v = x[j - first];
        if (v == 0) continue;
        std::size_t bi = j < nf ? j : (j - nf) % basis.size();
        if (column_slot[j] == 0) {
          parts[0].push_back(Expr(v) * basis[bi] * seed);
        } else {
          std::size_t m = (j - nf) / basis.size() % chain.size();
          parts[column_slot[j]].push_back(Expr(v) * basis[bi] * chain.all()[m].expr);
        }
      }
      ExprVector comps;
      std::vector<Expr> g;
      for (int k = 0; k <= depth; ++k) {
        comps.push_back(make_add(std::move(parts[k])));
        g.push_back(eps_k(depth - k) * comps.back());
      }
      return std::make_pair(make_add(std::move(g)), comps);
    };
    auto accept = [&](const std::pair<Expr, ExprVector>& cand) {
      if (is_zero(cand.second[0]) || !is_zero(apply_K(sys, an.map, cand.first))) return false;
      out.found = true;
      out.degree = degree;
      out.components = cand.second;
      out.candidate = make_generator(an, "gauge", cand.first);
      return true;
    };

    // G_0 = seed exactly.
    std::vector<Rational> rhs(row_of.size());
    for (const auto& [mono, v] : lead_terms) rhs[row_of.at(mono)] = -v;
    if (auto x = solve_rational(matrix(nf), rhs, columns.size() - nf))
      if (accept(assemble(*x, nf, true))) return out;

    // G_0 = f seed with f from the basis.
    auto ns = rational_null_space(matrix(0), columns.size());
    const std::vector<Rational>* best = nullptr;
    std::size_t best_nz = 0;
    for (const auto& v : ns) {
      bool lead_part = false;
      std::size_t nz = 0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] == 0) continue;
        ++nz;
        if (j < nf) lead_part = true;
      }
      if (lead_part && (best == nullptr || nz < best_nz)) {
        best = &v;
        best_nz = nz;
      }
    }
    if (best != nullptr && accept(assemble(*best, 0, false))) return out;
  }
  out.obstruction = "no generator of the form sum_k " + eps + "^(" + std::to_string(depth) +
                    "-k) G_k with G_k in the constraint-chain span up to coefficient degree " +
                    std::to_string(max_degree);
  out.obstruction_expr = k_lead;
  return out;
}

StructureFunctions structure_functions(const Analysis& an, const std::vector<GeneratorCandidate>& gs,
                                       std::uint64_t seed) {
  const SystemModel& sys = an.sys;
  StructureFunctions r;
  const std::size_t n = gs.size();
  r.c.assign(n, std::vector<ExprVector>(n, ExprVector(n, Expr(0))));
  ExprVector gl;
  for (const auto& g : gs) gl.push_back(g.g_l);
  r.ok = true;
  for (std::size_t i = 0; i < n && r.ok; ++i)
    for (std::size_t j = 0; j < n && r.ok; ++j) {
      Expr target = apply(gs[j].v_l, gs[i].g_l);
      if (is_zero(target)) continue;
      auto m = match_combination(target, gl);
      if (!m) {
        r.ok = false;
        r.message = "V^L_" + gs[j].name + " . G^L_" + gs[i].name + " is not a combination of the G^L";
        r.residual = target;
        break;
      }
      r.c[i][j] = *m;
    }
  if (!r.ok) return r;
  r.constant = true;
  for (const auto& row : r.c)
    for (const auto& col : row)
      for (const auto& e : col)
        if (!e.is_number()) r.constant = false;

  std::mt19937_64 rng(seed);
  std::vector<Expr> hs;
  for (int k = 0; k < 5; ++k) hs.push_back(random_phase_polynomial(sys, rng));
  r.projection_identity = true;
  r.lie_algebra = r.constant;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      VectorField br = lie_bracket(gs[i].v_l, gs[j].v_l);
      Expr gji = poisson_bracket(sys, gs[j].g_h, gs[i].g_h);
      for (const auto& h : hs) {
        Expr d = apply(br, pull_back(an.map, h)) - pull_back(an.map, poisson_bracket(sys, h, gji));
        if (!is_zero(d)) {
          r.projection_identity = false;
          r.residual = d;
        }
      }
      if (!r.constant) continue;
      // {G_j, G_i} = -C^k_ij G_k, hence [V_i, V_j] = -C^k_ij V_k.
      std::set<Symbol> chart;
      for (const auto& g : gs)
        for (const auto& [z, _] : g.v_l.components) chart.insert(z);
      for (const auto& z : chart) {
        std::vector<Expr> parts{br.component(z)};
        for (std::size_t k = 0; k < n; ++k) parts.push_back(r.c[i][j][k] * gs[k].v_l.component(z));
        if (!is_zero(make_add(std::move(parts)))) r.lie_algebra = false;
      }
    }
  return r;
}

Expr random_phase_polynomial(const SystemModel& sys, std::mt19937_64& rng, int max_degree, int terms) {
  const auto vars = phase_chart(sys);
  std::uniform_int_distribution<int> count(2, std::max(2, terms));
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  std::vector<Expr> parts;
  int nterms = count(rng);
  for (int k = 0; k < nterms; ++k) {
    int c = 0;
    while (c == 0) c = coeff(rng);
    Expr t(c);
    int d = deg(rng);
    for (int i = 0; i < d; ++i) t = t * Expr(vars[pick(rng)]);
    parts.push_back(t);
  }
  Expr out = make_add(std::move(parts));
  return out.is_number() ? out + Expr(vars[0]) : out;
}

Expr rename_gauge_function(const Expr& e, const std::string& from, const std::string& to, int max_order) {
  Bindings b;
  for (int k = 0; k <= max_order; ++k) b.emplace(gauge_symbol(from, k), Expr(gauge_symbol(to, k)));
  return substitute(e, b);
}

}  // namespace noether

#include "noether/report.hpp"

#include <fstream>
#include <sstream>

#include "noether/zero.hpp"

namespace noether {

namespace {

using json = nlohmann::ordered_json;

class Builder {
 public:
  std::vector<Expr> exprs;

  std::string ex(const Expr& e) {
    exprs.push_back(e);
    return to_string(e);
  }

  json list(const ExprVector& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(ex(e));
    return a;
  }

  json by_symbol(const std::vector<Symbol>& s, const ExprVector& v) {
    json o = json::object();
    for (std::size_t i = 0; i < s.size() && i < v.size(); ++i) o[s[i].name()] = ex(v[i]);
    return o;
  }

  json field(const VectorField& v) {
    json o;
    o["name"] = v.name;
    o["space"] = std::string(to_string(v.space));
    o["time"] = ex(v.time);
    json c = json::object();
    for (const auto& [z, e] : v.components) c[z.name()] = ex(e);
    o["components"] = c;
    json p = json::array();
    for (const auto& s : v.free_parameters) p.push_back(s.name());
    o["free_parameters"] = p;
    return o;
  }

  json constraints(const ConstraintSet& cs) {
    json a = json::array();
    for (const auto& c : cs.all()) {
      json o;
      o["level"] = c.level;
      o["expr"] = ex(c.expr);
      o["origin"] = c.origin;
      if (c.solved_for) o["solved_for"] = c.solved_for->name();
      a.push_back(o);
    }
    return a;
  }

  json redefinition(const Expr& time_only) {
    if (is_zero(time_only)) return nullptr;
    return "G_H -> G_H - integral(" + ex(time_only) + ") dt";
  }

  json noether(const Analysis& an, const NoetherReport& r) {
    const SystemModel& sys = an.sys;
    const GeneratorCandidate& g = r.generator;
    json o;
    o["name"] = g.name;
    o["G_H"] = ex(g.g_h);
    o["G_L"] = ex(g.g_l);
    o["delta_H_q"] = by_symbol(sys.q, g.delta_h_q);
    o["delta_H_p"] = by_symbol(sys.p, g.delta_h_p);
    o["delta_L_q"] = by_symbol(sys.q, g.delta_l_q);
    o["delta_L_qdot"] = by_symbol(sys.qdot, g.delta_l_qdot);
    o["V_H"] = field(g.v_h);
    o["V_L"] = field(g.v_l);
    o["V_L_bar"] = field(g.v_l_bar);

    json k;
    k["verdict"] = std::string(to_string(r.k.verdict));
    k["K_G"] = ex(r.k.k_g);
    k["residual"] = ex(r.k.residual);
    k["redefinition"] = redefinition(r.k.time_only);
    if (r.k.verdict == Verdict::partial_nonprojectable) k["plc_combination"] = list(r.k.plc_combination);
    o["K_condition"] = k;

    json ph;
    ph["verdict"] = std::string(to_string(r.phase.verdict));
    ph["cond1_first_class"] = r.phase.cond1;
    ph["cond2_weakly_zero"] = r.phase.cond2;
    ph["dG_dt_plus_bracket_GH"] = ex(r.phase.cond2_expr);
    ph["cond2_redefinition"] = redefinition(r.phase.cond2_time_only);
    ph["cond2_residual"] = ex(r.phase.cond2_reduction.normal_form);
    ph["cond2_phc_combination"] = list(r.phase.cond2_reduction.combination);
    ph["brackets_with_primaries"] = list(r.phase.cond1_check.brackets);
    json d = json::array();
    for (const auto& row : r.phase.cond1_check.d) d.push_back(list(row));
    ph["D"] = d;
    ph["cond1_residues"] = list(r.phase.cond1_check.residues);
    ph["commutator_VH_XH"] = field(r.phase.commutator);
    ph["commutator_weakly_hamiltonian"] = r.phase.commutator_weakly_hamiltonian;
    ph["commutator_phc_coefficients"] = list(r.phase.commutator_coefficients);
    o["phase_space"] = ph;

    json v;
    v["verdict"] = std::string(to_string(r.velocity.verdict));
    v["a_projects"] = r.velocity.projectable;
    v["a_gamma_residuals"] = list(r.velocity.projectability_residuals);
    v["b_tangent"] = r.velocity.tangent;
    json tc = json::array();
    for (const auto& row : r.velocity.tangency_coefficients) tc.push_back(list(row));
    v["b_plc_coefficients"] = tc;
    v["b_residues"] = list(r.velocity.tangency_residues);
    v["c_commutator_ok"] = r.velocity.commutator_ok;
    v["commutator_VL_XL"] = field(r.velocity.commutator);
    v["beta"] = list(r.velocity.beta);
    v["c_residues"] = list(r.velocity.commutator_residues);
    v["nonecsuf"] = r.velocity.nonecsuf;
    v["necsuf"] = r.velocity.necsuf;
    v["sufficiency_gap"] = r.velocity.sufficiency_gap;
    v["chi_restricts_configuration"] = r.velocity.chi_restricts_configuration;
    o["velocity_space"] = v;

    json c;
    c["verdict"] = std::string(to_string(r.commutation.verdict));
    c["theorem3_identities"] = r.commutation.theorem3_ok;
    json probes = json::array();
    for (const auto& p : r.commutation.probes) {
      json q;
      q["label"] = p.label;
      q["h"] = ex(p.h);
      q["difference"] = ex(p.difference);
      q["fl_difference"] = ex(p.fl_difference);
      q["theorem3"] = p.theorem3_ok;
      probes.push_back(q);
    }
    c["probes"] = probes;
    c["KG_q_residuals"] = list(r.commutation.kg_q_residuals);
    c["KG_v_residuals"] = list(r.commutation.kg_v_residuals);
    o["commutation_with_K"] = c;

    json b;
    b["verdict"] = std::string(to_string(r.bar.verdict));
    b["delta_bar_L"] = ex(r.bar.delta_bar_l);
    b["delta_L"] = ex(r.bar.delta_l);
    b["boundary"] = ex(r.bar.boundary);
    b["residual"] = ex(r.bar.residual);
    b["redefinition"] = redefinition(r.bar.time_only);
    b["noether_identity"] = r.bar.noether_identity;
    b["noether_identity_residual"] = ex(r.bar.noether_identity_residual);
    b["bar_relation"] = r.bar.bar_relation;
    o["bar_delta"] = b;

    o["equivalence_consistent"] = r.equivalence_consistent;
    o["conserved_quantity_projectable"] = r.conserved_quantity_projectable;
    return o;
  }
};

json verdicts(const PipelineResult& res, const NoetherReport& r) {
  json o;
  o["K_condition"] = std::string(to_string(r.k.verdict));
  o["phase_space"] = std::string(to_string(r.phase.verdict));
  o["velocity_space"] = std::string(to_string(r.velocity.verdict));
  o["commutation_with_K"] = std::string(to_string(r.commutation.verdict));
  o["bar_delta"] = std::string(to_string(r.bar.verdict));
  o["noether"] = res.generator_passes(r);
  return o;
}

void render(const json& j, int indent, std::ostream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    std::string label = j.is_object() ? it.key() : "-";
    if (v.is_object()) {
      os << pad << label << ":\n";
      render(v, indent + 1, os);
    } else if (v.is_array()) {
      bool flat = std::all_of(v.begin(), v.end(), [](const json& e) { return !e.is_structured(); });
      if (v.empty()) {
        os << pad << label << ": []\n";
      } else if (flat) {
        os << pad << label << ":\n";
        for (const auto& e : v) os << pad << "  - " << scalar(e) << "\n";
      } else {
        os << pad << label << ":\n";
        render(v, indent + 1, os);
      }
    } else {
      os << pad << label << ": " << (v.is_null() ? std::string("none") : scalar(v)) << "\n";
    }
  }
}

}  // namespace

std::string render_text(const json& j) {
  std::ostringstream os;
  render(j, 0, os);
  return os.str();
}

Report build_report(const PipelineResult& res) {
  Builder b;
  const Analysis& an = res.analysis;
  const SystemModel& sys = an.sys;
  const SystemDeclaration& d = res.decl;
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["system"] = d.name;
  j["conventions"] = {
      {"lie_bracket", "[V, X] = V o X - X o V"},
      {"poisson_bracket", "{f, g} = df/dq dg/dp - df/dp dg/dq"},
      {"structure_functions", "V_L_j . G_L_i = FL*(C^k_ij) G_L_k, {G_i, G_j} = C^k_ij G_k, [V_L_i, V_L_j] = -C^k_ij V_L_k"},
      {"derivative_atoms", "D_<field>_<s> is the action of vector field <field> on the free parameter <s>"},
  };
  j["options"] = {{"max_stabilization_depth", d.options.max_stabilization_depth},
                  {"ansatz_degree", d.options.ansatz_degree},
                  {"gauge_depth", d.options.gauge_depth},
                  {"probe_seed", d.options.probe_seed},
                  {"probe_points", d.options.probe_points}};
  j["coordinates"] = d.coordinates;
  j["parameters"] = d.parameters;
  j["gauge_functions"] = sys.symbols.gauge_functions();
  j["lagrangian"] = b.ex(sys.lagrangian);

  json der;
  der["momenta"] = b.by_symbol(sys.qdot, sys.momenta);
  json w = json::array();
  for (std::size_t i = 0; i < sys.hessian.rows(); ++i) {
    ExprVector row;
    for (std::size_t k = 0; k < sys.hessian.cols(); ++k) row.push_back(sys.hessian(i, k));
    w.push_back(b.list(row));
  }
  der["hessian"] = w;
  der["alpha"] = b.by_symbol(sys.q, sys.alpha);
  der["euler_lagrange"] = b.by_symbol(sys.q, sys.euler_lagrange);
  json ker = json::array();
  for (std::size_t mu = 0; mu < sys.gammas().size(); ++mu) ker.push_back(b.field(kernel_field(sys, mu)));
  der["kernel"] = ker;
  json kw = json::array();
  for (const auto& s : sys.kernel.warnings) kw.push_back(s);
  der["rank_warnings"] = kw;
  der["accelerations"] = b.by_symbol(sys.qddot, an.accelerations.a);
  j["tangent_space"] = der;

  json lg;
  lg["constraints_derived"] = an.map.constraints_derived;
  lg["hamiltonian_derived"] = an.map.hamiltonian_derived;
  lg["primary_constraints"] = b.list(an.map.primary);
  lg["hamiltonian"] = b.ex(an.map.hamiltonian);
  lg["hamiltonian_check"] = {{"ok", res.hamiltonian_check.ok},
                             {"residual", b.ex(res.hamiltonian_check.residual)},
                             {"modulo_primaries", res.hamiltonian_check.modulo_primaries}};
  lg["v"] = b.list(an.map.v);
  lg["notes"] = an.map.notes;
  j["legendre"] = lg;

  json cs;
  cs["hamiltonian_chain"] = b.constraints(an.hamiltonian_chain());
  cs["multiplier_determinations"] = b.list(an.stabilization.multiplier_determinations);
  cs["lagrangian_chain"] = b.constraints(an.lagrangian_chain);
  json plc = json::array();
  for (std::size_t mu = 0; mu < an.plc.size(); ++mu) {
    json o;
    o["expr"] = b.ex(an.plc.all()[mu].expr);
    o["projectable"] = res.chi_projectability[mu].projectable;
    o["gamma_residuals"] = b.list(res.chi_projectability[mu].residuals);
    plc.push_back(o);
  }
  cs["primary_lagrangian_constraints"] = plc;
  cs["chi_restricts_configuration"] = an.chi_restricts_configuration;
  j["constraints"] = cs;

  j["evolution"] = {{"XH", b.field(an.xh)}, {"XL", b.field(an.xl)}};

  json gens = json::array();
  for (const auto& r : res.generators) gens.push_back(b.noether(an, r));
  j["generators"] = gens;

  json gauges = json::array();
  for (const auto& g : res.gauges) {
    json o;
    o["seed"] = g.seed_text;
    o["depth"] = g.solution.depth;
    o["found"] = g.solution.found;
    if (g.solution.found) {
      o["ansatz_degree_used"] = g.solution.degree;
      o["G_H"] = b.ex(g.solution.candidate.g_h);
      o["components"] = b.list(g.solution.components);
      o["report"] = b.noether(an, *g.report);
    } else {
      o["obstruction"] = g.solution.obstruction;
      o["obstruction_expr"] = b.ex(g.solution.obstruction_expr);
    }
    gauges.push_back(o);
  }
  j["gauge_generators"] = gauges;

  if (res.structure) {
    const StructureFunctions& s = *res.structure;
    json o;
    o["members"] = res.structure_members;
    o["ok"] = s.ok;
    if (!s.message.empty()) o["message"] = s.message;
    json c = json::array();
    for (std::size_t i = 0; i < s.c.size(); ++i)
      for (std::size_t k = 0; k < s.c[i].size(); ++k) {
        json e;
        e["i"] = i;
        e["j"] = k;
        e["C_k"] = b.list(s.c[i][k]);
        c.push_back(e);
      }
    o["C"] = c;
    o["constant"] = s.constant;
    o["projection_identity"] = s.projection_identity;
    o["lie_algebra"] = s.lie_algebra;
    if (!s.residual.is_zero_literal()) o["residual"] = b.ex(s.residual);
    j["structure_functions"] = o;
  }

  j["warnings"] = an.warnings;
  json sum;
  json gv = json::object();
  for (const auto& r : res.generators) gv[r.generator.name] = verdicts(res, r);
  for (const auto& g : res.gauges) {
    if (g.report) {
      gv[g.report->generator.name] = verdicts(res, *g.report);
    } else {
      gv["gauge[" + g.seed_text + "]"] = {{"found", false}};
    }
  }
  sum["generators"] = gv;
  sum["exit_code"] = res.exit_code();
  j["summary"] = sum;

  Report out;
  out.text = render_text(j);
  out.json = std::move(j);
  out.expressions = std::move(b.exprs);
  return out;
}

void write_report(const Report& report, const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  std::ofstream js(dir / (stem + ".json"));
  js << report.json.dump(2) << "\n";
  std::ofstream tx(dir / (stem + ".txt"));
  tx << report.text;
  if (!js || !tx) throw std::runtime_error("cannot write report to " + dir.string());
}

}  // namespace noether

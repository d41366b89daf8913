#include "noether/selftest.hpp"

#include <iomanip>

#include "noether/calculus.hpp"
#include "noether/parse.hpp"
#include "noether/properties.hpp"
#include "noether/zero.hpp"

namespace noether {

namespace {

class Rows {
 public:
  Rows(std::string system, const SymbolTable& table) : system_(std::move(system)), table_(table) {}

  void truth(const std::string& key, const std::string& check, bool ok, const std::string& diff = {}) {
    rows.push_back({key, system_, check, ok, ok ? std::string() : diff});
  }

  void expr(const std::string& key, const std::string& check, const std::string& expected, const Expr& got) {
    Expr want = parse(expected, table_);
    bool ok = is_zero(want - got);
    truth(key, check, ok, "expected " + to_string(want) + "\n           got " + to_string(got));
  }

  void verdict(const std::string& key, const std::string& check, Verdict want, Verdict got) {
    truth(key, check, want == got,
          "expected " + std::string(to_string(want)) + "\n           got " + std::string(to_string(got)));
  }

  void prop(const std::string& key, const PropertyResult& p) {
    truth(key, p.name + " (" + std::to_string(p.instances) + " instances)", p.ok(),
          std::to_string(p.failures) + " failures, first: " + p.first_failure);
  }

  std::vector<SelfTestRow> rows;

 private:
  std::string system_;
  const SymbolTable& table_;
};

const NoetherReport* find(const PipelineResult& r, const std::string& name) {
  for (const auto& g : r.generators)
    if (g.generator.name == name) return &g;
  return nullptr;
}

void common_properties(Rows& rows, const Analysis& an, const std::vector<GeneratorCandidate>& gs,
                       std::uint64_t seed) {
  rows.prop("Tangent", k_three_forms(an, seed));
  rows.prop("Tangent", gamma_k(an, seed + 1));
  if (!an.map.v.empty()) rows.prop("Tangent", gamlam(an));
  if (!an.map.primary.empty()) rows.prop("Tangent", primlag(an));
  rows.prop("Props", poisson_identities(an, seed + 2));
  rows.prop("Props", lie_identities(an, seed + 3));
  if (!an.hamiltonian_chain().empty()) rows.prop("Props", reduce_certificates(an, seed + 4));
  if (!gs.empty()) {
    rows.prop("Thm2", generating_family(an, gs, seed + 5));
    rows.prop("Thm3", theorem3(an, gs, seed + 6));
  }
}

void relativistic_rows(Rows& rows, const PipelineResult& r, std::uint64_t seed) {
  const Analysis& an = r.analysis;
  const SystemModel& s = an.sys;
  rows.expr("Tangent", "momentum p_x", "exp(-w)*xdot", s.momenta[0]);
  rows.expr("Tangent", "momentum p_w", "0", s.momenta[1]);
  rows.expr("Tangent", "hamiltonian", "1/2*exp(w)*(p_x^2 - m^2)", an.map.hamiltonian);
  rows.truth("Tangent", "hamiltonian pulls back to the energy", r.hamiltonian_check.ok);
  rows.truth("Tangent", "one kernel direction", s.gammas().size() == 1);
  if (s.gammas().size() == 1) {
    rows.expr("Tangent", "Gamma = d/dwdot (x part)", "0", s.gammas()[0][0]);
    rows.expr("Tangent", "Gamma = d/dwdot (w part)", "1", s.gammas()[0][1]);
  }
  const std::string chi = "1/2*(exp(w)*m^2 - exp(-w)*xdot^2)";
  rows.expr("Tangent", "[L]_x", "exp(-w)*(wdot*xdot - xddot)", s.euler_lagrange[0]);
  rows.expr("Tangent", "[L]_w = chi", chi, s.euler_lagrange[1]);
  if (an.map.v.size() == 1) rows.expr("Tangent", "v", "wdot", an.map.v[0]);
  rows.expr("Tangent", "acceleration a_x", "wdot*xdot", an.accelerations.a[0]);

  const auto& chain = an.hamiltonian_chain().all();
  rows.truth("Chain", "two Hamiltonian constraints", chain.size() == 2);
  if (chain.size() == 2) {
    rows.expr("Chain", "phi0", "p_w", chain[0].expr);
    rows.expr("Chain", "phi1 = -H", "-1/2*exp(w)*(p_x^2 - m^2)", chain[1].expr);
    rows.expr("Tangent", "K . phi1 = wdot chi", "wdot*" + chi, apply_K(s, an.map, chain[1].expr));
  }
  rows.truth("Tangent", "single Lagrangian constraint", an.lagrangian_chain.size() == 1);
  if (an.plc.size() == 1) rows.expr("Tangent", "chi = K . phi0", chi, an.plc.all()[0].expr);
  rows.truth("Tangent", "chi projectable", !r.chi_projectability.empty() && r.chi_projectability[0].projectable);

  rows.truth("Gauge", "gauge generator solved", !r.gauges.empty() && r.gauges[0].solution.found);
  const std::string expected_g = "exp(-w)*(epsdot*p_w - eps*(-1/2*exp(w)*(p_x^2 - m^2)))";
  if (!r.gauges.empty() && r.gauges[0].solution.found) {
    rows.expr("Gauge", "solved G = exp(-w)(epsdot phi0 - eps phi1)", expected_g, r.gauges[0].solution.candidate.g_h);
  }
  const NoetherReport* g = find(r, "gauge");
  rows.truth("Gauge", "declared gauge generator present", g != nullptr);
  if (g == nullptr) return;
  rows.verdict("Thm4", "K condition", Verdict::pass, g->k.verdict);
  rows.verdict("Thm1", "phase space (cond1 and cond2)", Verdict::pass, g->phase.verdict);
  rows.truth("Thm1", "[V^H, X^H] weakly {-, phc}", g->phase.commutator_weakly_hamiltonian);
  rows.expr("Thm1", "[V^H, X^H] . w", "exp(-w)*(-epsddot + lambda*epsdot) + D_VH_lambda",
            g->phase.commutator.component(s.q[1]));
  rows.verdict("Thm2", "delta^L K = K delta^H", Verdict::pass, g->commutation.verdict);
  rows.truth("Thm3", "K.G identities", g->commutation.theorem3_ok);
  rows.verdict("Thm5", "velocity space", Verdict::pass, g->velocity.verdict);
  if (g->velocity.beta.size() == 1)
    rows.expr("Thm5", "beta",
              "exp(-w)*(-eps_d3 + 2*epsddot*wdot - epsdot*wdot^2 + epsdot*eta) + D_VL_eta", g->velocity.beta[0]);
  rows.verdict("BarDelta", "bar delta L total derivative", Verdict::pass, g->bar.verdict);
  rows.expr("BarDelta", "boundary = eps exp(-w) L", "eps*exp(-w)*(1/2*exp(-w)*xdot^2 + 1/2*exp(w)*m^2)",
            g->bar.boundary);
  rows.expr("BarDelta", "Vbar - V = -eps [L]_x d/dxdot", "-eps*exp(-w)*(wdot*xdot - xddot)",
            g->generator.delta_bar_l_qdot[0] - g->generator.delta_l_qdot[0]);
  rows.truth("BarDelta", "Noether identity", g->bar.noether_identity);
  rows.truth("Thm4", "equivalence battery", g->equivalence_consistent);
  if (r.structure) {
    rows.truth("Struct", "structure functions found", r.structure->ok);
    rows.truth("Struct", "abelian closure", r.structure->constant && r.structure->lie_algebra);
    rows.truth("Struct", "projection identity", r.structure->projection_identity);
  }
  std::vector<GeneratorCandidate> gs{g->generator};
  common_properties(rows, an, gs, seed);
}

void example2_rows(Rows& rows, const PipelineResult& r, std::uint64_t seed) {
  const Analysis& an = r.analysis;
  const SystemModel& s = an.sys;
  const auto& chain = an.hamiltonian_chain().all();
  rows.truth("Chain", "two Hamiltonian constraints", chain.size() == 2);
  if (chain.size() == 2) {
    rows.expr("Chain", "phi0", "p_y", chain[0].expr);
    rows.expr("Chain", "phi1", "-y", chain[1].expr);
  }
  const auto& lag = an.lagrangian_chain.all();
  rows.truth("Tangent", "two Lagrangian constraints", lag.size() == 2);
  if (lag.size() == 2) {
    rows.expr("Tangent", "chi1", "-y", lag[0].expr);
    rows.expr("Tangent", "chi2", "-ydot", lag[1].expr);
  }
  rows.expr("Tangent", "X^L_0 . x", "xdot", an.xl0.component(s.q[0]));
  rows.expr("Tangent", "X^L_0 . y", "ydot", an.xl0.component(s.q[1]));
  rows.expr("Tangent", "X^L_0 . ydot", "0", an.xl0.component(s.qdot[1]));
  rows.truth("Thm5", "plc restrict configuration", an.chi_restricts_configuration);

  std::vector<GeneratorCandidate> gs;
  if (const NoetherReport* g = find(r, "nonprojectable")) {
    gs.push_back(g->generator);
    rows.verdict("Thm4", "K condition for p_y y", Verdict::partial_nonprojectable, g->k.verdict);
    rows.expr("Thm4", "K . G residual", "-y^2", g->k.residual);
    rows.verdict("Thm5", "velocity space for p_y y", Verdict::pass, g->velocity.verdict);
    rows.truth("Thm5", "nonecsuf holds, necsuf fails", g->velocity.sufficiency_gap);
    rows.verdict("Thm2", "commutation for p_y y", Verdict::fail, g->commutation.verdict);
    bool all = true;
    std::string bad;
    for (const auto& p : g->commutation.probes) {
      Expr want = Expr(-2) * Expr(s.q[1]) * pull_back(an.map, diff(p.h, s.p[1]));
      if (!is_zero(p.difference - want)) {
        all = false;
        bad = "h = " + to_string(p.h) + ": expected " + to_string(want) + ", got " + to_string(p.difference);
      }
    }
    rows.truth("Thm2", "difference = -2y FL*(dh/dp_y)", all, bad);
    rows.expr("BarDelta", "bar delta L", "-y^2", g->bar.delta_bar_l);
    rows.verdict("BarDelta", "bar delta L not a total derivative", Verdict::fail, g->bar.verdict);
    rows.truth("Thm4", "equivalence battery (p_y y)", g->equivalence_consistent);
  } else {
    rows.truth("Thm4", "candidate p_y y present", false);
  }
  if (const NoetherReport* g = find(r, "shifted")) {
    gs.push_back(g->generator);
    rows.expr("BarDelta", "delta^L L for p_x + p_y y", "-y^2", g->bar.delta_l);
    rows.verdict("Thm1", "phase space for p_x + p_y y", Verdict::fail, g->phase.verdict);
    rows.truth("Thm4", "not Noether (p_x + p_y y)", g->k.verdict != Verdict::pass);
    rows.truth("Thm4", "equivalence battery (p_x + p_y y)", g->equivalence_consistent);
  } else {
    rows.truth("Thm4", "candidate p_x + p_y y present", false);
  }
  common_properties(rows, an, gs, seed);
}

void free_particle_rows(Rows& rows, const PipelineResult& r, std::uint64_t seed) {
  const Analysis& an = r.analysis;
  const SystemModel& s = an.sys;
  rows.truth("Regular", "no constraints", an.hamiltonian_chain().empty() && an.plc.empty());
  rows.expr("Regular", "hamiltonian", "1/2*p_q^2", an.map.hamiltonian);
  std::mt19937_64 rng(seed);
  PropertyResult kp{"K h = FL*(dh/dt + {h, H})"};
  for (int i = 0; i < 10; ++i) {
    Expr h = random_phase_polynomial(s, rng) + Expr(time_symbol()) * random_phase_polynomial(s, rng, 1, 2);
    Expr want = pull_back(an.map, time_partial(h) + poisson_bracket(s, h, an.map.hamiltonian));
    kp.record(is_zero(apply_K(s, an.map, h) - want), to_string(h));
  }
  rows.prop("Regular", kp);
  std::vector<GeneratorCandidate> gs;
  for (const auto& g : r.generators) {
    gs.push_back(g.generator);
    rows.truth("Regular", g.generator.name + " is Noether", r.generator_passes(g));
    bool zero = true;
    for (const auto& [z, c] : g.velocity.commutator.components) zero = zero && is_zero(c);
    rows.truth("Regular", g.generator.name + ": [V^L, X^L] = 0", zero && is_zero(g.velocity.commutator.time));
  }
  common_properties(rows, an, gs, seed);
}

PipelineResult run_fixture(const std::string& stem, const std::string& text, const SelfTestOptions& o) {
  SystemDeclaration d = parse_declaration(text, stem + ".toml");
  RunRequest req;
  req.probe_seed = o.probe_seed;
  req.probe_points = o.probe_points;
  if (stem == "example2") {
    d.generators.push_back({"nonprojectable", "p_y*y", 0});
    d.generators.push_back({"shifted", "p_x + p_y*y", 0});
  }
  return run_pipeline(std::move(d), req);
}

}  // namespace


std::vector<SelfTestRow> golden_rows(const std::string& system, const PipelineResult& result, std::uint64_t seed) {
  Rows rows(system, result.analysis.sys.symbols);
  if (system == "relativistic_particle") relativistic_rows(rows, result, seed);
  if (system == "example2") example2_rows(rows, result, seed);
  if (system == "free_particle") free_particle_rows(rows, result, seed);
  return rows.rows;
}

int run_self_test(const SelfTestOptions& options, std::ostream& os) {
  std::vector<SelfTestRow> all;
  for (const auto& [stem, text] : bundled_fixtures()) {
    try {
      PipelineResult r = run_fixture(stem, text, options);
      auto rows = golden_rows(stem, r, options.probe_seed);
      all.insert(all.end(), rows.begin(), rows.end());
    } catch (const std::exception& e) {
      all.push_back({"Run", stem, "pipeline", false, e.what()});
    }
  }

  // Negative control: a corrupted Lagrangian must turn the golden matrix red.
  std::string corrupt = bundled_fixtures().at("relativistic_particle");
  const std::string from = "1/2*exp(w)*m^2";
  corrupt.replace(corrupt.find(from), from.size(), "exp(w)*m^2");
  std::string control_diff;
  bool caught = false;
  try {
    PipelineResult r = run_fixture("relativistic_particle", corrupt, options);
    for (const auto& row : golden_rows("relativistic_particle", r, options.probe_seed))
      if (!row.pass) {
        caught = true;
        if (control_diff.empty()) control_diff = row.check + ": " + row.diff;
      }
  } catch (const std::exception& e) {
    caught = true;
    control_diff = e.what();
  }

  std::size_t failed = 0;
  for (const auto& row : all) {
    os << (row.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(9) << row.key << std::setw(23) << row.system
       << row.check << "\n";
    if (!row.pass) {
      ++failed;
      os << "         " << row.diff << "\n";
    }
  }
  os << (caught ? "[PASS] " : "[FAIL] ") << std::left << std::setw(9) << "Control" << std::setw(23)
     << "corrupted fixture" << "mutation detected\n";
  if (caught) os << "         " << control_diff << "\n";

  std::map<std::string, std::pair<int, int>> by_key;
  for (const auto& row : all) {
    auto& [p, n] = by_key[row.key];
    ++n;
    if (row.pass) ++p;
  }
  os << "\nsummary by theorem/section:\n";
  for (const auto& [k, pn] : by_key) os << "  " << std::setw(9) << k << pn.first << "/" << pn.second << "\n";
  os << (failed == 0 && caught ? "self-test: all green\n" : "self-test: RED\n");
  return failed == 0 && caught ? 0 : 1;
}

}  // namespace noether

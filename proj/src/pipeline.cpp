#include "noether/pipeline.hpp"

#include <algorithm>

#include "noether/parse.hpp"
#include "noether/zero.hpp"

namespace noether {

namespace {

Expr parse_field(const SystemDeclaration& d, const std::string& text, int line, const SymbolTable& t,
                 const std::string& what) {
  try {
    return parse(text, t);
  } catch (const std::exception& e) {
    throw DeclarationError(d.source, line, what + ": " + e.what());
  }
}

template <class F>
auto guarded(const std::string& module, F&& f) {
  try {
    return f();
  } catch (const DeclarationError&) {
    throw;
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(module, e.what());
  }
}

}  // namespace

bool PipelineResult::generator_passes(const NoetherReport& r) const {
  return r.k.verdict == Verdict::pass && r.phase.verdict == Verdict::pass &&
         r.velocity.verdict == Verdict::pass && r.commutation.verdict == Verdict::pass &&
         r.bar.verdict == Verdict::pass && r.equivalence_consistent && r.commutation.theorem3_ok;
}

int PipelineResult::exit_code() const {
  for (const auto& r : generators)
    if (!generator_passes(r)) return 1;
  for (const auto& g : gauges)
    if (!g.solution.found || !g.report || !generator_passes(*g.report)) return 1;
  if (structure) {
    if (!structure->ok || !structure->projection_identity) return 1;
    if (structure->constant && !structure->lie_algebra) return 1;
  }
  return 0;
}

PipelineResult run_pipeline(SystemDeclaration decl, const RunRequest& request) {
  DeclarationOptions& opt = decl.options;
  if (request.probe_seed) opt.probe_seed = *request.probe_seed;
  if (request.probe_points) opt.probe_points = *request.probe_points;
  if (request.max_depth) opt.max_stabilization_depth = *request.max_depth;
  if (request.ansatz_degree) opt.ansatz_degree = *request.ansatz_degree;
  ProbeSettings ps = probe_settings();
  ps.seed = opt.probe_seed;
  ps.points = opt.probe_points;
  set_probe_settings(ps);

  for (const auto& s : request.gauge_seeds) decl.gauge_seeds.push_back({s, 0});
  for (std::size_t k = 0; k < request.generators.size(); ++k)
    decl.generators.push_back({"cli" + std::to_string(k + 1), request.generators[k], 0});
  // Two copies of each solved gauge generator feed the structure functions.
  if (!decl.gauge_seeds.empty() && !decl.gauge_functions.empty()) {
    const std::string base = decl.gauge_functions.front();
    for (const char* suffix : {"1", "2"})
      if (std::find(decl.gauge_functions.begin(), decl.gauge_functions.end(), base + suffix) ==
          decl.gauge_functions.end())
        decl.gauge_functions.push_back(base + suffix);
  }

  PipelineResult out;
  SymbolTable table = symbol_table(decl);
  Expr lagrangian = parse_field(decl, decl.lagrangian, decl.line_of("lagrangian"), table, "lagrangian");
  std::optional<Expr> hamiltonian;
  if (decl.hamiltonian)
    hamiltonian = parse_field(decl, *decl.hamiltonian, decl.line_of("hamiltonian"), table, "hamiltonian");
  std::optional<ExprVector> primary;
  if (decl.primary_constraints) {
    primary.emplace();
    for (const auto& s : *decl.primary_constraints)
      primary->push_back(
          parse_field(decl, s, decl.line_of("primary_constraints"), table, "primary_constraints entry"));
  }

  SystemModel sys = guarded("system_model", [&] { return build_system(decl.name, table, lagrangian); });
  AnalysisOptions aopt;
  aopt.max_stabilization_depth = opt.max_stabilization_depth;
  aopt.ansatz_degree = opt.ansatz_degree;
  out.analysis = guarded("constraint_algebra", [&] { return analyze_system(std::move(sys), hamiltonian, primary, aopt); });
  const Analysis& an = out.analysis;
  const SymbolTable& symbols = an.sys.symbols;
  out.hamiltonian_check = verify_hamiltonian(an.sys, an.map, an.map.hamiltonian);
  for (const auto& c : an.plc.all()) out.chi_projectability.push_back(is_projectable(an.sys, c.expr));

  std::vector<GeneratorCandidate> family;
  for (const auto& g : decl.generators) {
    Expr e = parse_field(decl, g.expression, g.line, symbols, "generator " + g.name);
    NoetherReport r = guarded("noether", [&] {
      return analyze_generator(an, make_generator(an, g.name, e), opt.probe_seed);
    });
    if (r.k.verdict == Verdict::pass) family.push_back(r.generator);
    out.generators.push_back(std::move(r));
  }

  for (const auto& s : decl.gauge_seeds) {
    Expr seed = parse_field(decl, s.expression, s.line, symbols, "gauge seed");
    GaugeRun run;
    run.seed_text = to_string(seed);
    run.solution = guarded("noether", [&] {
      return solve_gauge_generator(an, seed, opt.gauge_depth, opt.ansatz_degree);
    });
    if (run.solution.found) {
      GeneratorCandidate c = run.solution.candidate;
      c.name = "gauge[" + run.seed_text + "]";
      run.report = guarded("noether", [&] { return analyze_generator(an, c, opt.probe_seed); });
      const std::string base = symbols.gauge_functions().front();
      for (const char* suffix : {"1", "2"}) {
        Expr renamed = rename_gauge_function(c.g_h, base, base + suffix);
        family.push_back(make_generator(an, c.name + "(" + base + "->" + base + suffix + ")", renamed));
      }
    }
    out.gauges.push_back(std::move(run));
  }

  if (!family.empty()) {
    out.structure = guarded("noether", [&] { return structure_functions(an, family, opt.probe_seed); });
    for (const auto& g : family) out.structure_members.push_back(g.name);
  }
  out.decl = std::move(decl);
  return out;
}

}  // namespace noether

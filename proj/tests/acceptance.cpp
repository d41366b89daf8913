#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>

#include "noether/calculus.hpp"
#include "noether/evolution.hpp"
#include "noether/properties.hpp"
#include "noether/system_model.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace noether;
using testing_support::generator;
using testing_support::run_fixture;
using testing_support::run_text;

namespace {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  std::string known_deviation;  // non-empty when a failure is expected and documented
};

class Criterion {
 public:
  explicit Criterion(const PipelineResult* r = nullptr) : r_(r) {}
  void use(const PipelineResult& r) { r_ = &r; }

  void truth(const std::string& name, bool ok, const std::string& detail = {}) {
    checks.push_back({name, ok, ok ? std::string() : detail, {}});
  }
  void expr(const std::string& name, const std::string& want, const Expr& got) {
    Expr w = parse(want, r_->analysis.sys.symbols);
    bool ok = is_zero(w - got);
    truth(name, ok, "expected " + to_string(w) + ", got " + to_string(got));
  }
  void prop(const PropertyResult& p, int min_instances = 10) {
    truth(p.name + " [" + std::to_string(p.instances) + " instances]", p.ok() && p.instances >= min_instances,
          std::to_string(p.failures) + " failures; first: " + p.first_failure);
  }
  void deviation(const std::string& name, bool ok, const std::string& detail, const std::string& why) {
    checks.push_back({name, ok, ok ? std::string() : detail, ok ? std::string() : why});
  }

  std::vector<Check> checks;

 private:
  const PipelineResult* r_;
};

PropertyResult merge(std::string name, const std::vector<PropertyResult>& parts) {
  PropertyResult m{std::move(name)};
  for (const auto& p : parts) {
    m.instances += p.instances;
    if (m.failures == 0 && p.failures > 0) m.first_failure = p.first_failure;
    m.failures += p.failures;
  }
  return m;
}

Expr bracket(const SystemModel& s, const Expr& f, const Expr& g) {
  Expr r(0);
  for (std::size_t i = 0; i < s.dim(); ++i) r += diff(f, s.q[i]) * diff(g, s.p[i]) - diff(f, s.p[i]) * diff(g, s.q[i]);
  return r;
}

void example1_derivation(Criterion& c) {
  static const PipelineResult r = run_fixture("relativistic_particle");
  c.use(r);
  const Analysis& an = r.analysis;
  const SystemModel& s = an.sys;
  const std::string chi = "1/2*(exp(w)*m^2 - exp(-w)*xdot^2)";
  c.expr("momentum p_x = exp(-w) xdot", "exp(-w)*xdot", s.momenta[0]);
  c.expr("momentum p_w = 0", "0", s.momenta[1]);
  c.truth("H pulls back to the energy", r.hamiltonian_check.ok && is_zero(r.hamiltonian_check.residual));
  const auto& chain = an.hamiltonian_chain().all();
  c.truth("two-step Hamiltonian chain", chain.size() == 2);
  if (chain.size() != 2) return;
  c.expr("phi0 = p_w", "p_w", chain[0].expr);
  c.expr("phi1 = -H", "-1/2*exp(w)*(p_x^2 - m^2)", chain[1].expr);
  c.truth("phi1 from stabilization", chain[1].level == 1);
  c.truth("single plc", an.plc.size() == 1);
  if (an.plc.size() == 1) c.expr("chi", chi, an.plc.all()[0].expr);
  Expr k1 = apply_K(s, an.map, chain[1].expr);
  c.expr("K . phi1 = wdot chi", "wdot*" + chi, k1);
  c.truth("K . phi1 reduces to 0 mod chi", reduce_mod(k1, an.plc).reduced_to_zero());
  c.truth("one kernel direction", s.gammas().size() == 1);
  if (s.gammas().size() == 1) {
    c.expr("Gamma x-part", "0", s.gammas()[0][0]);
    c.expr("Gamma w-part", "1", s.gammas()[0][1]);
  }
  c.expr("[L]_x", "exp(-w)*(wdot*xdot - xddot)", s.euler_lagrange[0]);
  c.expr("[L]_w = chi", chi, s.euler_lagrange[1]);
}

void example1_noether(Criterion& c) {
  static const PipelineResult r = run_fixture("relativistic_particle");
  c.use(r);
  const Analysis& an = r.analysis;
  const SystemModel& s = an.sys;
  const std::string expected_g = "exp(-w)*(epsdot*p_w - eps*(-1/2*exp(w)*(p_x^2 - m^2)))";
  GaugeSolution sol = solve_gauge_generator(an, parse("exp(-w)*p_w", s.symbols), 1, 4);
  c.truth("gauge solver finds a generator", sol.found, sol.obstruction);
  if (!sol.found) return;
  Expr want_g = parse(expected_g, s.symbols);
  c.truth("G weakly equal to exp(-w)(epsdot phi0 - eps phi1)",
          weak_equals(sol.candidate.g_h, want_g, an.hamiltonian_chain()),
          "got " + to_string(sol.candidate.g_h));
  NoetherReport g = analyze_generator(an, sol.candidate, 20240611);
  c.truth("K condition PASS", g.k.verdict == Verdict::pass, std::string(to_string(g.k.verdict)));
  bool zero = !g.commutation.probes.empty();
  for (const auto& p : g.commutation.probes) zero = zero && p.difference.is_zero_literal();
  c.truth("delta^L K - K delta^H identically 0 on every probe", zero);
  c.truth("phase space PASS", g.phase.verdict == Verdict::pass);
  c.truth("[V^H, X^H] weakly in {-, phc}", g.phase.commutator_weakly_hamiltonian);
  c.expr("[V^H, X^H] . w", "exp(-w)*(-epsddot + lambda*epsdot) + D_VH_lambda", g.phase.commutator.component(s.q[1]));
  c.truth("velocity space PASS", g.velocity.verdict == Verdict::pass);
  bool along_gamma = is_zero(g.velocity.commutator.time);
  for (const auto& [z, e] : g.velocity.commutator.components)
    if (!(z == s.qdot[1])) along_gamma = along_gamma && is_zero(e);
  c.truth("[V^L, X^L] proportional to Gamma", along_gamma, to_string(g.velocity.commutator));
  Expr beta = g.velocity.beta.size() == 1 ? g.velocity.beta[0] : Expr(0);
  c.expr("beta (recomputed)",
         "exp(-w)*(-eps_d3 + 2*epsddot*wdot - epsdot*wdot^2 + epsdot*eta) + D_VL_eta", beta);
  Expr printed = parse("exp(-w)*(-eps_d3 + 2*epsddot*wdot - epsdot*wdot^2 + epsdot*exp(-w)*eta + D_VL_eta)", s.symbols);
  c.deviation("beta as printed", is_zero(printed - beta),
              "printed " + to_string(printed) + ", obtained " + to_string(beta),
              "printed beta carries an extra exp(-w) on the eta and V.eta terms");
  c.expr("Vbar^L = V^L - eps [L]_x d/dxdot", "-eps*exp(-w)*(wdot*xdot - xddot)",
         g.generator.delta_bar_l_qdot[0] - g.generator.delta_l_qdot[0]);
  c.expr("Vbar^L . w = V^L . w", "0", g.generator.v_l_bar.component(s.q[1]) - g.generator.v_l.component(s.q[1]));
  Expr boundary = parse("eps*exp(-w)*(1/2*exp(-w)*xdot^2 + 1/2*exp(w)*m^2)", s.symbols);
  c.truth("bar delta L PASS", g.bar.verdict == Verdict::pass);
  c.truth("bar delta L = d/dt(eps exp(-w) L)", is_zero(g.bar.delta_bar_l - total_time_derivative(s, boundary)),
          "got " + to_string(g.bar.delta_bar_l));
}

void example2_negative(Criterion& c) {
  static const PipelineResult r = run_fixture("example2", {"p_y*y", "p_x + p_y*y"});
  c.use(r);
  const Analysis& an = r.analysis;
  const SystemModel& s = an.sys;
  const auto& chain = an.hamiltonian_chain().all();
  c.truth("two Hamiltonian constraints", chain.size() == 2);
  if (chain.size() == 2) {
    c.expr("phi0 = p_y", "p_y", chain[0].expr);
    c.expr("phi1 = -y", "-y", chain[1].expr);
  }
  const auto& lag = an.lagrangian_chain.all();
  c.truth("two Lagrangian constraints", lag.size() == 2);
  if (lag.size() == 2) {
    c.expr("chi1 = -y", "-y", lag[0].expr);
    c.expr("chi2 = -ydot", "-ydot", lag[1].expr);
  }
  const NoetherReport& a = generator(r, "cli1");
  c.truth("velocity (a) projectability PASS", a.velocity.projectable);
  c.truth("velocity (b) tangency PASS", a.velocity.tangent);
  c.truth("velocity (c) commutator PASS", a.velocity.commutator_ok);
  c.truth("K condition PARTIAL-NONPROJECTABLE", a.k.verdict == Verdict::partial_nonprojectable,
          std::string(to_string(a.k.verdict)));
  c.expr("K . G residual = -y^2", "-y^2", a.k.residual);
  bool all = !a.commutation.probes.empty();
  std::string bad;
  for (const auto& p : a.commutation.probes) {
    Expr want = Expr(-2) * Expr(s.q[1]) * pull_back(an.map, diff(p.h, s.p[1]));
    if (!is_zero(p.difference - want)) {
      all = false;
      bad = "h = " + to_string(p.h) + ": " + to_string(p.difference);
    }
  }
  c.truth("commutation difference = -2y FL*(dh/dp_y)", all, bad);
  c.expr("bar delta L = -y^2", "-y^2", a.bar.delta_bar_l);
  c.truth("bar delta L not a total derivative", a.bar.verdict == Verdict::fail);
  const NoetherReport& b = generator(r, "cli2");
  c.truth("p_x + p_y y: Noether FAIL", !b.noether() && !r.generator_passes(b));
  c.expr("p_x + p_y y: delta^L L = -y^2", "-y^2", b.bar.delta_l);
}

void regular_limit(Criterion& c) {
  static const PipelineResult fp = run_fixture("free_particle");
  static const testing_support::RegularQuadratic rq = testing_support::random_regular(1);
  static const PipelineResult rr = run_text(rq.toml, {rq.hamiltonian});
  for (const PipelineResult* r : {&fp, &rr}) {
    c.use(*r);
    const Analysis& an = r->analysis;
    const std::string tag = an.sys.name + ": ";
    c.truth(tag + "no constraints", an.hamiltonian_chain().empty() && an.plc.empty() && an.map.primary.empty());
    std::mt19937_64 rng(11);
    bool ok = true;
    std::string bad;
    for (int i = 0; i < 10; ++i) {
      Expr h = random_phase_polynomial(an.sys, rng) + Expr(time_symbol()) * random_phase_polynomial(an.sys, rng, 1, 2);
      Expr want = pull_back(an.map, time_partial(h) + bracket(an.sys, h, an.map.hamiltonian));
      if (!is_zero(apply_K(an.sys, an.map, h) - want)) {
        ok = false;
        bad = to_string(h);
      }
    }
    c.truth(tag + "K h = FL*(dh/dt + {h, H}) on 10 random h", ok, bad);
    c.truth(tag + "has conserved generators", !r->generators.empty());
    for (const auto& g : r->generators) {
      bool zero = is_zero(g.velocity.commutator.time);
      for (const auto& [z, e] : g.velocity.commutator.components) zero = zero && is_zero(e);
      c.truth(tag + g.generator.name + " conserved", g.noether());
      c.truth(tag + g.generator.name + ": [V^L, X^L] = 0", zero && g.velocity.verdict == Verdict::pass);
    }
  }
  c.use(rr);
  c.expr("random regular: H against inverse-Hessian oracle", rq.hamiltonian, rr.analysis.map.hamiltonian);
}

void property_suites(Criterion& c) {
  static const PipelineResult rel = run_fixture("relativistic_particle");
  static const PipelineResult ex2 = run_fixture("example2", {"p_y*y", "p_x + p_y*y"});
  static const PipelineResult fp = run_fixture("free_particle");
  std::vector<PipelineResult> sing;
  for (int s = 1; s <= 5; ++s) sing.push_back(run_text(testing_support::random_singular(s)));
  std::vector<const PipelineResult*> all{&rel, &ex2, &fp};
  std::vector<const PipelineResult*> singular{&rel, &ex2};
  for (const auto& s : sing) {
    all.push_back(&s);
    singular.push_back(&s);
  }
  auto over = [&](const std::string& name, const std::vector<const PipelineResult*>& rs,
                  const std::function<PropertyResult(const Analysis&, std::uint64_t)>& f) {
    std::vector<PropertyResult> parts;
    std::uint64_t seed = 100;
    for (const auto* r : rs) parts.push_back(f(r->analysis, seed++));
    return merge(name, parts);
  };
  c.prop(over("K three-form agreement", all, [](const Analysis& a, std::uint64_t s) { return k_three_forms(a, s); }));
  c.prop(over("Gamma . K h = FL*{h, phi}", singular, [](const Analysis& a, std::uint64_t s) { return gamma_k(a, s); }));
  c.prop(over("Gamma_nu . v^mu = delta", singular, [](const Analysis& a, std::uint64_t) { return gamlam(a); }));
  c.prop(over("alpha . gamma_mu = K . phi_mu", singular, [](const Analysis& a, std::uint64_t) { return primlag(a); }));

  // passing and failing candidates on every singular fixture
  std::vector<PropertyResult> fam, thm3;
  int passing = 0, failing = 0;
  std::mt19937_64 rng(77);
  for (const auto* r : singular) {
    std::vector<GeneratorCandidate> gs;
    for (const auto& g : r->generators) gs.push_back(g.generator);
    for (const auto& g : r->gauges)
      if (g.solution.found) gs.push_back(g.solution.candidate);
    for (int i = 0; i < 2; ++i)
      gs.push_back(make_generator(r->analysis, "random" + std::to_string(i), random_phase_polynomial(r->analysis.sys, rng, 2, 3)));
    for (const auto& g : gs) (check_K_condition(r->analysis, g).verdict == Verdict::pass ? passing : failing)++;
    fam.push_back(generating_family(r->analysis, gs, 5));
    thm3.push_back(theorem3(r->analysis, gs, 6));
  }
  c.prop(merge("generating family equivalence", fam));
  c.prop(merge("K.G identities", thm3));
  c.truth("K.G identities exercised on passing and failing candidates", passing > 0 && failing > 0,
          std::to_string(passing) + " passing, " + std::to_string(failing) + " failing");
  c.prop(over("Poisson antisymmetry and Jacobi", all, [](const Analysis& a, std::uint64_t s) { return poisson_identities(a, s); }));
  c.prop(over("Lie antisymmetry and Jacobi", all, [](const Analysis& a, std::uint64_t s) { return lie_identities(a, s); }));
  c.prop(over("reduce_mod certificates", singular, [](const Analysis& a, std::uint64_t s) { return reduce_certificates(a, s); }));
  c.prop(canonical_idempotence(20240611));
  c.prop(parse_round_trip(20240611));
}

void equivalence_battery(Criterion& c) {
  std::vector<PipelineResult> rs;
  rs.push_back(run_fixture("relativistic_particle", {"p_x", "x*p_x", "p_w", "t*p_x - x"}));
  rs.push_back(run_fixture("example2", {"p_y*y", "p_x + p_y*y", "p_x", "x*p_y", "t*p_x - x"}));
  rs.push_back(run_fixture("free_particle", {"q*p_q", "p_q^2", "t*p_q"}));
  int count = 0;
  bool witness = false;
  for (const auto& r : rs) {
    std::vector<const NoetherReport*> reps;
    for (const auto& g : r.generators) reps.push_back(&g);
    for (const auto& g : r.gauges)
      if (g.report) reps.push_back(&*g.report);
    for (const auto* g : reps) {
      ++count;
      bool k = g->k.verdict == Verdict::pass, ph = g->phase.verdict == Verdict::pass,
           cm = g->commutation.verdict == Verdict::pass, v = g->velocity.verdict == Verdict::pass;
      std::string tag = r.analysis.sys.name + "/" + g->generator.name + " (" + to_string(g->generator.g_h) + ")";
      c.truth(tag + ": K <=> phase <=> commutation, K => velocity", k == ph && ph == cm && (!k || v),
              std::string("K ") + std::string(to_string(g->k.verdict)) + ", phase " + std::string(to_string(g->phase.verdict)) +
                  ", commutation " + std::string(to_string(g->commutation.verdict)) + ", velocity " +
                  std::string(to_string(g->velocity.verdict)));
      if (v && !k) witness = true;
    }
  }
  c.truth("velocity PASS does not imply K PASS (witness found)", witness);
  c.truth("candidates examined: " + std::to_string(count), count >= 10);
}

}  // namespace

int main() {
  struct Spec {
    int id;
    const char* title;
    std::function<void(Criterion&)> run;
  };
  std::vector<Spec> specs{{1, "relativistic particle derivation suite", example1_derivation},
                          {2, "relativistic particle Noether suite", example1_noether},
                          {3, "nonprojectable generator negative suite", example2_negative},
                          {4, "regular-limit suite", regular_limit},
                          {5, "identity property suites", property_suites},
                          {6, "theorem-equivalence battery", equivalence_battery}};
  bool unexpected = false;
  for (const auto& s : specs) {
    Criterion c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      s.run(c);
    } catch (const std::exception& e) {
      c.truth("ran without error", false, e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.truth("completed under 5 s", secs < 5.0, std::to_string(secs) + " s");
    std::size_t passed = 0;
    std::vector<const Check*> deviations, failures;
    for (const auto& k : c.checks) {
      if (k.pass)
        ++passed;
      else if (!k.known_deviation.empty())
        deviations.push_back(&k);
      else
        failures.push_back(&k);
    }
    bool ok = deviations.empty() && failures.empty();
    std::cout << "criterion " << s.id << ": " << (ok ? "PASS" : "FAIL") << "  " << s.title << "  (" << passed << "/"
              << c.checks.size() << " checks, " << std::fixed << std::setprecision(2) << secs << " s";
    if (!deviations.empty() && failures.empty()) std::cout << "; known deviation only";
    std::cout << ")\n";
    for (const auto* k : failures) std::cout << "    FAIL " << k->name << ": " << k->detail << "\n";
    for (const auto* k : deviations)
      std::cout << "    KNOWN DEVIATION " << k->name << ": " << k->detail << "\n      (" << k->known_deviation << ")\n";
    if (!failures.empty()) unexpected = true;
  }
  return unexpected ? 1 : 0;
}

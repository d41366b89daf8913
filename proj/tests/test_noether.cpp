#include <gtest/gtest.h>

#include "noether/noether.hpp"
#include "noether/properties.hpp"
#include "noether/system_model.hpp"
#include "support.hpp"

using namespace noether;
using testing_support::generator;
using testing_support::P;
using testing_support::run_fixture;
using testing_support::run_text;
using testing_support::same;

namespace {

const char* kRotor =
    "name = \"rotor\"\ncoordinates = [\"x\", \"y\", \"z\"]\n"
    "lagrangian = \"1/2*(xdot^2 + ydot^2 + zdot^2)\"\n"
    "[[generators]]\nname = \"Lx\"\nexpression = \"y*p_z - z*p_y\"\n"
    "[[generators]]\nname = \"Ly\"\nexpression = \"z*p_x - x*p_z\"\n"
    "[[generators]]\nname = \"Lz\"\nexpression = \"x*p_y - y*p_x\"\n";

}  // namespace

TEST(Noether, RelativisticGaugeGenerator) {
  auto r = run_fixture("relativistic_particle");
  const auto& g = generator(r, "gauge");
  EXPECT_EQ(g.k.verdict, Verdict::pass);
  EXPECT_EQ(g.phase.verdict, Verdict::pass);
  EXPECT_EQ(g.velocity.verdict, Verdict::pass);
  EXPECT_EQ(g.commutation.verdict, Verdict::pass);
  EXPECT_EQ(g.bar.verdict, Verdict::pass);
  EXPECT_TRUE(g.equivalence_consistent);
  for (const auto& p : g.commutation.probes) EXPECT_TRUE(same(p.difference, P(r, "0"))) << p.label;
  EXPECT_TRUE(same(g.generator.delta_l_qdot[1], P(r, "exp(-w)*(epsddot - epsdot*wdot)")));
  Expr boundary = P(r, "eps*exp(-w)*(1/2*exp(-w)*xdot^2 + 1/2*exp(w)*m^2)");
  EXPECT_TRUE(same(g.bar.delta_bar_l, total_time_derivative(r.analysis.sys, boundary)));
}

TEST(Noether, GaugeSolverSeeds) {
  auto r = run_fixture("relativistic_particle");
  GaugeSolution a = solve_gauge_generator(r.analysis, P(r, "exp(-w)*p_w"), 1, 4);
  ASSERT_TRUE(a.found);
  EXPECT_EQ(a.degree, 0);
  EXPECT_TRUE(same(a.candidate.g_h, P(r, "exp(-w)*(epsdot*p_w + 1/2*eps*exp(w)*(p_x^2 - m^2))")));
  GaugeSolution b = solve_gauge_generator(r.analysis, P(r, "p_w"), 1, 4);
  ASSERT_TRUE(b.found);
  GeneratorCandidate c = b.candidate;
  EXPECT_EQ(check_K_condition(r.analysis, c).verdict, Verdict::pass);
}

TEST(Noether, GaugeSolverRejectsUnconstrained) {
  auto r = run_fixture("free_particle");
  EXPECT_THROW(solve_gauge_generator(r.analysis, P(r, "p_q"), 1, 2), std::invalid_argument);
}

TEST(Noether, ExampleTwoNonprojectable) {
  auto r = run_fixture("example2", {"p_y*y", "p_x + p_y*y", "p_x"});
  const auto& a = generator(r, "cli1");
  EXPECT_EQ(a.k.verdict, Verdict::partial_nonprojectable);
  EXPECT_TRUE(same(a.k.residual, P(r, "-y^2")));
  EXPECT_EQ(a.velocity.verdict, Verdict::pass);
  EXPECT_TRUE(a.velocity.sufficiency_gap);
  EXPECT_EQ(a.commutation.verdict, Verdict::fail);
  EXPECT_TRUE(a.commutation.theorem3_ok);
  EXPECT_EQ(a.bar.verdict, Verdict::fail);
  EXPECT_TRUE(same(a.bar.delta_bar_l, P(r, "-y^2")));
  EXPECT_TRUE(a.equivalence_consistent);

  const auto& b = generator(r, "cli2");
  EXPECT_FALSE(b.noether());
  EXPECT_TRUE(same(b.bar.delta_l, P(r, "-y^2")));
  EXPECT_TRUE(b.equivalence_consistent);

  const auto& c = generator(r, "cli3");
  EXPECT_TRUE(r.generator_passes(c));
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Noether, GeneratorValidation) {
  auto r = run_fixture("relativistic_particle");
  EXPECT_ANY_THROW(make_generator(r.analysis, "bad", P(r, "xdot")));
  EXPECT_ANY_THROW(make_generator(r.analysis, "bad", P(r, "lambda*p_x")));
}

TEST(Noether, Theorem3OnPassingAndFailing) {
  auto r = run_fixture("example2", {"p_y*y", "p_x + p_y*y", "p_x", "x*p_y"});
  std::vector<GeneratorCandidate> gs;
  for (const auto& g : r.generators) gs.push_back(g.generator);
  EXPECT_TRUE(theorem3(r.analysis, gs, 5).ok());
  EXPECT_TRUE(generating_family(r.analysis, gs, 6).ok());
}

TEST(Noether, EquivalenceBatteryOnEveryCandidate) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"relativistic_particle", {"x*p_x", "p_x", "t*p_x"}},
      {"example2", {"x*p_x", "p_x", "t*p_x", "y*p_y"}},
      {"free_particle", {"q*p_q", "p_q^2", "t*p_q"}}};
  for (const auto& [stem, candidates] : cases) {
    auto r = run_fixture(stem, candidates);
    for (const auto& g : r.generators) {
      bool k = g.k.verdict == Verdict::pass;
      EXPECT_EQ(k, g.phase.verdict == Verdict::pass) << stem << " " << g.generator.name;
      EXPECT_EQ(k, g.commutation.verdict == Verdict::pass) << stem << " " << g.generator.name;
      if (k) EXPECT_EQ(g.velocity.verdict, Verdict::pass);
    }
  }
}

TEST(StructureFunctions, RotationsNonAbelian) {
  auto r = run_text(kRotor);
  ASSERT_EQ(r.generators.size(), 3u);
  for (const auto& g : r.generators) EXPECT_TRUE(r.generator_passes(g)) << g.generator.name;
  ASSERT_TRUE(r.structure.has_value());
  const StructureFunctions& sf = *r.structure;
  ASSERT_TRUE(sf.ok) << sf.message;
  EXPECT_TRUE(sf.constant);
  EXPECT_TRUE(sf.projection_identity);
  EXPECT_TRUE(sf.lie_algebra);
  // {Lx, Ly} = Lz
  EXPECT_TRUE(same(sf.c[0][1][2], P(r, "1")));
  EXPECT_TRUE(same(sf.c[1][0][2], P(r, "-1")));
  EXPECT_TRUE(same(sf.c[0][1][0], P(r, "0")));
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(StructureFunctions, BracketSignOnVelocityFields) {
  auto r = run_text(kRotor);
  const auto& gx = r.generators[0].generator;
  const auto& gy = r.generators[1].generator;
  const auto& gz = r.generators[2].generator;
  // Oracle straight from the fields: [V_x, V_y] = -V_z since {Lx, Ly} = +Lz.
  VectorField b = lie_bracket(gx.v_l, gy.v_l);
  for (const auto& z : r.analysis.sys.q) EXPECT_TRUE(same(b.component(z) + gz.v_l.component(z), P(r, "0")));
  for (const auto& z : r.analysis.sys.qdot) EXPECT_TRUE(same(b.component(z) + gz.v_l.component(z), P(r, "0")));
}

TEST(StructureFunctions, RelativisticAbelian) {
  auto r = run_fixture("relativistic_particle");
  ASSERT_TRUE(r.structure.has_value());
  EXPECT_TRUE(r.structure->ok);
  EXPECT_TRUE(r.structure->constant);
  for (const auto& ci : r.structure->c)
    for (const auto& cij : ci)
      for (const auto& e : cij) EXPECT_TRUE(same(e, P(r, "0")));
}

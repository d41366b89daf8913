#include <gtest/gtest.h>

#include <gmpxx.h>

#include <random>
#include <sstream>

#include "noether/calculus.hpp"
#include "noether/evolution.hpp"
#include "noether/properties.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace noether;
using testing_support::P;
using testing_support::run_fixture;
using testing_support::run_text;
using testing_support::same;

namespace {

std::vector<std::string> stems() { return {"relativistic_particle", "example2", "free_particle"}; }

// Independent Poisson bracket straight from the definition.
Expr bracket(const SystemModel& s, const Expr& f, const Expr& g) {
  Expr r(0);
  for (std::size_t i = 0; i < s.dim(); ++i) r += diff(f, s.q[i]) * diff(g, s.p[i]) - diff(f, s.p[i]) * diff(g, s.q[i]);
  return r;
}

}  // namespace

TEST(SystemModel, RelativisticTangentSpace) {
  auto r = run_fixture("relativistic_particle");
  const SystemModel& s = r.analysis.sys;
  EXPECT_TRUE(same(s.momenta[0], P(r, "exp(-w)*xdot")));
  EXPECT_TRUE(same(s.momenta[1], P(r, "0")));
  EXPECT_TRUE(same(s.hessian(0, 0), P(r, "exp(-w)")));
  EXPECT_EQ(s.kernel.rank, 1u);
  EXPECT_TRUE(same(s.alpha[1], P(r, "1/2*(exp(w)*m^2 - exp(-w)*xdot^2)")));
  EXPECT_TRUE(same(s.euler_lagrange[0], P(r, "exp(-w)*(wdot*xdot - xddot)")));
  ExprVector chi = primary_lagrangian_constraints(s);
  ASSERT_EQ(chi.size(), 1u);
  EXPECT_TRUE(same(chi[0], s.euler_lagrange[1]));
}

TEST(SystemModel, TotalTimeDerivative) {
  auto r = run_fixture("relativistic_particle");
  const SystemModel& s = r.analysis.sys;
  EXPECT_TRUE(same(total_time_derivative(s, P(r, "exp(-w)*xdot")), P(r, "exp(-w)*(xddot - wdot*xdot)")));
  EXPECT_TRUE(same(total_time_derivative(s, P(r, "eps*x")), P(r, "epsdot*x + eps*xdot")));
}

TEST(SystemModel, RejectsAccelerationsInLagrangian) {
  EXPECT_ANY_THROW(run_text("name = \"bad\"\ncoordinates = [\"x\"]\nlagrangian = \"xddot*x\"\n"));
}

TEST(Legendre, PrimaryConstraintsAndHamiltonian) {
  auto r = run_fixture("relativistic_particle");
  const LegendreMap& m = r.analysis.map;
  ASSERT_EQ(m.primary.size(), 1u);
  EXPECT_TRUE(same(m.primary[0], P(r, "p_w")));
  EXPECT_TRUE(same(m.hamiltonian, P(r, "1/2*exp(w)*(p_x^2 - m^2)")));
  EXPECT_TRUE(r.hamiltonian_check.ok);
  EXPECT_TRUE(same(pull_back(m, P(r, "p_x*exp(w)")), P(r, "xdot")));
  EXPECT_TRUE(same(pull_back(m, m.primary[0]), P(r, "0")));
}

TEST(Legendre, DeclaredHamiltonianIsVerified) {
  auto ok = run_text(
      "name = \"e\"\ncoordinates = [\"x\", \"y\"]\nlagrangian = \"1/2*xdot^2 - 1/2*y^2\"\n"
      "hamiltonian = \"1/2*p_x^2 + 1/2*y^2 + 3*p_y\"\nprimary_constraints = [\"p_y\"]\n");
  EXPECT_TRUE(ok.hamiltonian_check.ok);
  bool rejected = false;
  try {
    auto bad = run_text(
        "name = \"e\"\ncoordinates = [\"x\", \"y\"]\nlagrangian = \"1/2*xdot^2 - 1/2*y^2\"\n"
        "hamiltonian = \"p_x^2 + 1/2*y^2\"\nprimary_constraints = [\"p_y\"]\n");
    rejected = !bad.hamiltonian_check.ok;
  } catch (const std::exception&) {
    rejected = true;
  }
  EXPECT_TRUE(rejected);
}

TEST(Legendre, Projectability) {
  auto r = run_fixture("relativistic_particle");
  EXPECT_TRUE(is_projectable(r.analysis.sys, P(r, "exp(-w)*xdot^2")).projectable);
  EXPECT_FALSE(is_projectable(r.analysis.sys, P(r, "wdot")).projectable);
}

TEST(Legendre, RegularQuadraticAgainstInverseOracle) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    testing_support::RegularQuadratic rq = testing_support::random_regular(seed);
    auto r = run_text(rq.toml);
    EXPECT_TRUE(r.analysis.map.primary.empty());
    EXPECT_TRUE(r.analysis.hamiltonian_chain().empty());
    EXPECT_TRUE(same(r.analysis.map.hamiltonian, P(r, rq.hamiltonian))) << r.analysis.map.hamiltonian;
    std::mt19937_64 rng(seed);
    const SystemModel& s = r.analysis.sys;
    for (int i = 0; i < 5; ++i) {
      Expr h = random_phase_polynomial(s, rng, 2, 3);
      Expr want = pull_back(r.analysis.map, bracket(s, h, P(r, rq.hamiltonian)));
      EXPECT_TRUE(same(apply_K(s, r.analysis.map, h), want)) << h;
    }
  }
}

TEST(Evolution, FreeParticleK) {
  auto r = run_fixture("free_particle");
  const SystemModel& s = r.analysis.sys;
  EXPECT_TRUE(same(apply_K(s, r.analysis.map, P(r, "q")), P(r, "qdot")));
  EXPECT_TRUE(same(apply_K(s, r.analysis.map, P(r, "p_q*t - q")), P(r, "0")));
  EXPECT_TRUE(same(poisson_bracket(s, P(r, "q"), P(r, "p_q")), P(r, "1")));
}

TEST(Evolution, ExampleTwoFields) {
  auto r = run_fixture("example2");
  const Analysis& an = r.analysis;
  EXPECT_TRUE(same(an.xh.component(an.sys.p[1]), P(r, "-y")));
  EXPECT_TRUE(same(an.xh.component(an.sys.q[1]), P(r, "lambda")));
  EXPECT_TRUE(same(an.xl.component(an.sys.qdot[1]), P(r, "eta")));
}

TEST(Evolution, PropertySuitesOnFixtures) {
  for (const auto& stem : stems()) {
    auto r = run_fixture(stem);
    for (const auto& p : {k_three_forms(r.analysis, 31), gamma_k(r.analysis, 32), poisson_identities(r.analysis, 33),
                          lie_identities(r.analysis, 34)}) {
      EXPECT_GE(p.instances, 10);
      EXPECT_TRUE(p.ok()) << stem << ": " << p.name << ": " << p.first_failure;
    }
  }
}

TEST(Constraints, Chains) {
  auto r = run_fixture("relativistic_particle");
  const auto& chain = r.analysis.hamiltonian_chain();
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_TRUE(same(chain.all()[1].expr, P(r, "-1/2*exp(w)*(p_x^2 - m^2)")));
  Reduction red = reduce_mod(apply_K(r.analysis.sys, r.analysis.map, chain.all()[1].expr), r.analysis.plc);
  EXPECT_TRUE(red.reduced_to_zero());

  auto e2 = run_fixture("example2");
  EXPECT_EQ(e2.analysis.stabilization.multiplier_determinations.size(), 1u);
  EXPECT_TRUE(same(e2.analysis.stabilization.multiplier_determinations[0], P(e2, "-lambda")));
  EXPECT_TRUE(e2.analysis.chi_restricts_configuration);
}

TEST(Constraints, ReduceCertificates) {
  for (const auto& stem : {"relativistic_particle", "example2"}) {
    auto r = run_fixture(stem);
    PropertyResult p = reduce_certificates(r.analysis, 41);
    EXPECT_TRUE(p.ok()) << stem << ": " << p.first_failure;
  }
  auto r = run_fixture("example2");
  EXPECT_TRUE(weakly_zero(P(r, "y*p_x + p_y^2"), r.analysis.hamiltonian_chain()));
  EXPECT_FALSE(weakly_zero(P(r, "p_x"), r.analysis.hamiltonian_chain()));
}

TEST(Constraints, GamlamPrimlag) {
  for (const auto& stem : {"relativistic_particle", "example2"}) {
    auto r = run_fixture(stem);
    EXPECT_TRUE(gamlam(r.analysis).ok()) << stem;
    EXPECT_TRUE(primlag(r.analysis).ok()) << stem;
  }
}

TEST(Constraints, StabilizationDepthLimit) {
  const std::string text =
      "name = \"chain\"\ncoordinates = [\"x\", \"y\", \"z\"]\n"
      "lagrangian = \"1/2*xdot^2 + x*ydot + y*zdot - 1/2*z^2\"\n";
  auto r = run_text(text);
  EXPECT_GE(r.analysis.hamiltonian_chain().size(), 2u);
}

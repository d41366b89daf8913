#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "noether/calculus.hpp"
#include "noether/parse.hpp"
#include "noether/properties.hpp"
#include "noether/zero.hpp"

using namespace noether;

namespace {

SymbolTable table() {
  SymbolTable t;
  t.add_coordinate("x");
  t.add_coordinate("y");
  t.add_parameter("a");
  t.add_gauge_function("eps");
  return t;
}

Expr P(const std::string& s) {
  static SymbolTable t = table();
  return parse(s, t);
}

// values in [0.5, 1.5] keep log and sqrt real
double value(const Symbol& s) {
  double h = 0;
  for (char c : s.name()) h = std::fmod(h * 31 + c, 977.0);
  return 0.5 + h / 977.0;
}

}  // namespace

TEST(ExprCore, ParseRoundTrip) {
  PropertyResult r = parse_round_trip(7, 200);
  EXPECT_EQ(r.instances, 200);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(ExprCore, CanonicalIdempotence) {
  PropertyResult r = canonical_idempotence(11, 200);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(ExprCore, CanonicalFormsAgree) {
  EXPECT_EQ(P("x*y + y*x"), P("2*y*x"));
  EXPECT_EQ(P("(x + 1) - 1"), P("x"));
  EXPECT_EQ(P("x^2*x^-2"), P("1"));
  EXPECT_EQ(P("0.5*x"), P("1/2*x"));
  EXPECT_EQ(P("exp(x)*exp(-x)"), P("1"));
  EXPECT_EQ(P("exp(0)"), P("1"));
  EXPECT_EQ(P("2^3"), P("8"));
}

TEST(ExprCore, Precedence) {
  EXPECT_EQ(P("-x^2"), P("-(x^2)"));
  EXPECT_EQ(P("2^3^2"), P("512"));
  EXPECT_EQ(P("x/y/a"), P("x/(y*a)"));
  EXPECT_EQ(P("x - y - a"), P("x - (y + a)"));
}

TEST(ExprCore, ParseErrorsCarryPositions) {
  SymbolTable t = table();
  try {
    parse("x + * y", t);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse("z + 1", t), ParseError);
  EXPECT_THROW(parse("foo(x)", t), ParseError);
  EXPECT_THROW(parse("(x + 1", t), ParseError);
}

TEST(ExprCore, ZeroEquivalence) {
  EXPECT_TRUE(is_zero(P("(x^2 - y^2)/(x - y) - x - y")));
  EXPECT_TRUE(is_zero(P("1/x + 1/y - (x + y)/(x*y)")));
  EXPECT_TRUE(is_zero(P("exp(x + y) - exp(x)*exp(y)")));
  EXPECT_TRUE(is_zero(P("sin(x)^2 + cos(x)^2 - 1")));
  EXPECT_FALSE(is_zero(P("x - y")));
  EXPECT_FALSE(is_zero(P("exp(x) - 1 - x")));
}

TEST(ExprCore, DiffMatchesFiniteDifferences) {
  SymbolTable t = table();
  std::vector<Symbol> syms;
  for (const char* n : {"x", "y", "a"}) syms.push_back(*t.lookup(n));
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    Expr e = random_expr(syms, rng, 3);
    const Symbol& s = syms[i % 3];
    Expr d = diff(e, s);
    double h = 1e-5;
    auto at = [&](double shift) {
      return evaluate(e, [&](const Symbol& z) { return value(z) + (z == s ? shift : 0.0); });
    };
    double fd = (at(h) - at(-h)) / (2 * h);
    double ex = evaluate(d, value);
    if (!std::isfinite(fd) || !std::isfinite(ex) || std::abs(ex) > 1e6) continue;
    ++checked;
    EXPECT_NEAR(fd, ex, 1e-4 * (1 + std::abs(ex))) << to_string(e);
  }
  EXPECT_GE(checked, 30);
}

TEST(ExprCore, DiffRules) {
  SymbolTable t = table();
  Symbol x = *t.lookup("x"), xdot = *t.lookup("xdot");
  EXPECT_EQ(diff(P("x*xdot"), xdot), P("x"));
  EXPECT_EQ(diff(P("xdot"), x), P("0"));
  EXPECT_EQ(diff(P("exp(a*x)"), x), P("a*exp(a*x)"));
  EXPECT_EQ(diff(P("log(x)"), x), P("1/x"));
  EXPECT_EQ(diff(P("sqrt(x)"), x), P("1/2*x^(-1/2)"));
}

TEST(ExprCore, TimePartialAdvancesGaugeChain) {
  EXPECT_EQ(time_partial(P("eps*t + epsdot*x")), P("eps + epsdot*t + epsddot*x"));
  EXPECT_EQ(time_partial(P("epsddot")), P("eps_d3"));
}

TEST(ExprCore, SubstituteAgreesWithEvaluation) {
  SymbolTable t = table();
  std::vector<Symbol> syms;
  for (const char* n : {"x", "y", "a"}) syms.push_back(*t.lookup(n));
  std::mt19937_64 rng(5);
  Symbol x = syms[0];
  for (int i = 0; i < 40; ++i) {
    Expr e = random_expr(syms, rng, 3);
    Expr image = P("y + 1/2");
    Expr s = substitute(e, {{x, image}});
    double direct = evaluate(e, [&](const Symbol& z) { return z == x ? value(syms[1]) + 0.5 : value(z); });
    double via = evaluate(s, value);
    if (!std::isfinite(direct) || std::abs(direct) > 1e6) continue;
    EXPECT_NEAR(direct, via, 1e-8 * (1 + std::abs(direct))) << to_string(e);
  }
}

TEST(ExprCore, SubstitutionCycleDetected) {
  SymbolTable t = table();
  Symbol x = *t.lookup("x"), y = *t.lookup("y");
  EXPECT_THROW(substitute(P("x"), {{x, P("y")}, {y, P("x + 1")}}), SubstitutionCycle);
}

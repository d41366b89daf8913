#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "noether/report.hpp"
#include "support.hpp"

using namespace noether;
using testing_support::run_fixture;
using testing_support::run_text;

namespace {

int line_of_error(const std::string& text) {
  try {
    run_text(text);
  } catch (const DeclarationError& e) {
    return e.line();
  }
  return -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Declaration, ParsesFields) {
  SystemDeclaration d = parse_declaration(bundled_fixtures().at("relativistic_particle"));
  EXPECT_EQ(d.name, "relativistic_particle");
  EXPECT_EQ(d.coordinates, (std::vector<std::string>{"x", "w"}));
  EXPECT_EQ(d.parameters, (std::vector<std::string>{"m"}));
  ASSERT_EQ(d.generators.size(), 1u);
  EXPECT_EQ(d.gauge_seeds.size(), 1u);
  EXPECT_EQ(d.options.ansatz_degree, 4);
}

TEST(Declaration, ErrorsCarryLineNumbers) {
  EXPECT_EQ(line_of_error("name = \"a\"\ncoordinates = [\"x\"]\nlagrangian = \"xdot^2 +\"\n"), 3);
  EXPECT_EQ(line_of_error("name = \"a\"\ncoordinates = [\"x\"]\n\nlagrangian = \"q*xdot\"\n"), 4);
  EXPECT_EQ(line_of_error("name = \"a\"\ncoordinates = [\"x\"]\nlagrangian = \"xdot^2\"\nextra = 1\n"), 4);
  EXPECT_EQ(line_of_error("name = \"a\"\ncoordinates = [\"x\"]\nlagrangian = \"xdot^2\"\n[options]\nansatz_degree = -1\n"),
            5);
  EXPECT_EQ(line_of_error("name = \"a\"\ncoordinates = [\"x\"]\nlagrangian = \"xdot^2\"\n"
                          "[[generators]]\nname = \"g\"\nexpression = \"p_x +\"\n"),
            6);
  EXPECT_GT(line_of_error("name = \"a\"\ncoordinates = [\"x\"\n"), 0);
  EXPECT_GT(line_of_error("name = \"a\"\nlagrangian = \"xdot^2\"\n"), 0);
}

TEST(Declaration, EmptyGeneratorListIsConstraintAnalysisOnly) {
  auto r = run_text("name = \"a\"\ncoordinates = [\"x\", \"y\"]\nlagrangian = \"1/2*xdot^2 - 1/2*y^2\"\n");
  EXPECT_TRUE(r.generators.empty());
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Report, Deterministic) {
  std::string a = build_report(run_fixture("relativistic_particle")).json.dump(2);
  std::string b = build_report(run_fixture("relativistic_particle")).json.dump(2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(build_report(run_fixture("example2", {"p_y*y"})).text,
            build_report(run_fixture("example2", {"p_y*y"})).text);
}

TEST(Report, EveryExpressionRoundTrips) {
  for (const auto& stem : {"relativistic_particle", "example2", "free_particle"}) {
    auto r = run_fixture(stem, {std::string(stem) == "free_particle" ? "q*p_q" : "x*p_x"});
    Report rep = build_report(r);
    EXPECT_GT(rep.expressions.size(), 20u);
    for (const auto& e : rep.expressions) EXPECT_EQ(parse(to_string(e), r.analysis.sys.symbols), e) << to_string(e);
  }
}

TEST(Report, SchemaAndSummary) {
  Report rep = build_report(run_fixture("example2", {"p_y*y"}));
  EXPECT_EQ(rep.json["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(rep.json["summary"]["exit_code"], 1);
  EXPECT_EQ(rep.json["summary"]["generators"]["cli1"]["K_condition"], "PARTIAL-NONPROJECTABLE");
}

TEST(Report, WritesJsonAndText) {
  auto dir = std::filesystem::temp_directory_path() / "noether_report_test";
  std::filesystem::remove_all(dir);
  Report rep = build_report(run_fixture("free_particle"));
  write_report(rep, dir, "free");
  EXPECT_EQ(slurp(dir / "free.txt"), rep.text);
  EXPECT_EQ(nlohmann::ordered_json::parse(slurp(dir / "free.json")), rep.json);
}

TEST(SelfTest, GreenAndProbeCountIndependent) {
  std::ostringstream a, b;
  EXPECT_EQ(run_self_test({}, a), 0) << a.str();
  SelfTestOptions more;
  more.probe_points = 100;
  EXPECT_EQ(run_self_test(more, b), 0) << b.str();
  EXPECT_EQ(a.str(), b.str());
}

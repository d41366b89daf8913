#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "noether/declaration.hpp"
#include "noether/pipeline.hpp"
#include "noether/report.hpp"
#include "noether/selftest.hpp"

namespace {

int analyze(const std::string& file, const noether::RunRequest& req, const std::string& report_dir) {
  try {
    noether::SystemDeclaration decl = noether::load_declaration(file);
    noether::PipelineResult result = noether::run_pipeline(std::move(decl), req);
    noether::Report report = noether::build_report(result);
    std::filesystem::path dir(report_dir);
    std::filesystem::create_directories(dir);
    noether::write_report(report, dir, std::filesystem::path(file).stem().string());
    std::cout << report.text;
    return result.exit_code();
  } catch (const noether::DeclarationError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const noether::PipelineError& e) {
    std::cerr << "error in " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noether-kit: symmetry and gauge analysis of singular Lagrangians"};
  app.require_subcommand(1);

  std::string file, report_dir = ".";
  noether::RunRequest req;
  std::uint64_t seed = 0;
  int points = 0, depth = 0, degree = 0;
  std::string gauge_seed;
  auto* an = app.add_subcommand("analyze", "analyze a system declaration");
  an->add_option("file", file, "declaration file")->required()->check(CLI::ExistingFile);
  an->add_option("--generator", req.generators, "extra generator G^H to analyze");
  auto* sg = an->add_option("--solve-gauge", gauge_seed, "primary-constraint seed for the gauge solver");
  an->add_option("--report-dir", report_dir, "directory for the .json and .txt reports");
  auto* ps = an->add_option("--probe-seed", seed, "seed for randomized probes");
  auto* pp = an->add_option("--probe-points", points, "numeric probe points")->check(CLI::PositiveNumber);
  auto* md = an->add_option("--max-depth", depth, "maximum stabilization depth")->check(CLI::PositiveNumber);
  auto* ad = an->add_option("--ansatz-degree", degree, "gauge ansatz degree")->check(CLI::NonNegativeNumber);

  std::uint64_t st_seed = 20240611;
  int st_points = 0;
  auto* st = app.add_subcommand("self-test", "run the bundled golden fixtures and property suites");
  st->add_option("--probe-seed", st_seed, "seed for randomized suites");
  auto* stp = st->add_option("--probe-points", st_points, "numeric probe points")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*an) {
    if (*sg) req.gauge_seeds.push_back(gauge_seed);
    if (*ps) req.probe_seed = seed;
    if (*pp) req.probe_points = points;
    if (*md) req.max_depth = depth;
    if (*ad) req.ansatz_degree = degree;
    return analyze(file, req, report_dir);
  }
  noether::SelfTestOptions o;
  o.probe_seed = st_seed;
  if (*stp) o.probe_points = st_points;
  try {
    return noether::run_self_test(o, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

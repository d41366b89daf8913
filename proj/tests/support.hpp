#pragma once

#include <string>
#include <vector>

#include "noether/declaration.hpp"
#include "noether/parse.hpp"
#include "noether/pipeline.hpp"
#include "noether/selftest.hpp"
#include "noether/zero.hpp"

namespace testing_support {

inline noether::PipelineResult run_text(const std::string& text, std::vector<std::string> generators = {},
                                        std::vector<std::string> seeds = {}) {
  noether::RunRequest req;
  req.generators = std::move(generators);
  req.gauge_seeds = std::move(seeds);
  return noether::run_pipeline(noether::parse_declaration(text, "test.toml"), req);
}

inline noether::PipelineResult run_fixture(const std::string& stem, std::vector<std::string> generators = {}) {
  return run_text(noether::bundled_fixtures().at(stem), std::move(generators));
}

inline noether::Expr P(const noether::PipelineResult& r, const std::string& text) {
  return noether::parse(text, r.analysis.sys.symbols);
}

inline bool same(const noether::Expr& a, const noether::Expr& b) { return noether::is_zero(a - b); }

inline const noether::NoetherReport& generator(const noether::PipelineResult& r, const std::string& name) {
  for (const auto& g : r.generators)
    if (g.generator.name == name) return g;
  throw std::out_of_range(name);
}

}  // namespace testing_support

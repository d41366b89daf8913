#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noether/declaration.hpp"
#include "noether/noether.hpp"

namespace noether {

/// A failure inside the analysis, tagged with the module that raised it.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

/// Command-line additions and overrides on top of a declaration.
struct RunRequest {
  std::vector<std::string> generators;
  std::vector<std::string> gauge_seeds;
  std::optional<std::uint64_t> probe_seed;
  std::optional<int> probe_points;
  std::optional<int> max_depth;
  std::optional<int> ansatz_degree;
};

struct GaugeRun {
  std::string seed_text;
  GaugeSolution solution;
  std::optional<NoetherReport> report;
};

struct PipelineResult {
  SystemDeclaration decl;
  Analysis analysis;
  HamiltonianCheck hamiltonian_check;
  std::vector<Projectability> chi_projectability;
  std::vector<NoetherReport> generators;
  std::vector<GaugeRun> gauges;
  std::optional<StructureFunctions> structure;
  std::vector<std::string> structure_members;

  bool generator_passes(const NoetherReport& r) const;
  /// 0 when every requested check passes, 1 otherwise.
  int exit_code() const;
};

PipelineResult run_pipeline(SystemDeclaration decl, const RunRequest& request = {});

}  // namespace noether

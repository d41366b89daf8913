#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "noether/pipeline.hpp"

namespace noether {

/// Declaration texts of the bundled systems, keyed by file stem.
const std::map<std::string, std::string>& bundled_fixtures();

struct SelfTestRow {
  std::string key;  // theorem or section the check belongs to
  std::string system;
  std::string check;
  bool pass = false;
  std::string diff;  // expected vs obtained canonical forms when red
};

struct SelfTestOptions {
  std::uint64_t probe_seed = 20240611;
  std::optional<int> probe_points;
};

/// Golden and property rows for one bundled system run.
std::vector<SelfTestRow> golden_rows(const std::string& system, const PipelineResult& result, std::uint64_t seed);

/// Runs every bundled fixture plus a corrupted copy that must go red.
/// Prints the matrix and returns the process exit status.
int run_self_test(const SelfTestOptions& options, std::ostream& os);

}  // namespace noether

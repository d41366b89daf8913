#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "noether/pipeline.hpp"

namespace noether {

inline constexpr int kReportSchemaVersion = 1;

struct Report {
  nlohmann::ordered_json json;
  std::string text;
  // Every expression printed in the report, in emission order.
  std::vector<Expr> expressions;
};

Report build_report(const PipelineResult& result);

/// Indented plain-text rendering of a report tree.
std::string render_text(const nlohmann::ordered_json& j);

/// Writes <dir>/<stem>.json and <dir>/<stem>.txt.
void write_report(const Report& report, const std::filesystem::path& dir, const std::string& stem);

}  // namespace noether

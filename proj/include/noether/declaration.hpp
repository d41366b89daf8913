#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noether/symbol.hpp"

namespace noether {

class DeclarationError : public std::runtime_error {
 public:
  DeclarationError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct DeclarationOptions {
  int max_stabilization_depth = 10;
  int ansatz_degree = 4;
  int gauge_depth = 1;
  std::uint64_t probe_seed = 20240611;
  int probe_points = 20;
};

struct GeneratorDeclaration {
  std::string name;
  std::string expression;
  int line = 0;
};

struct SeedDeclaration {
  std::string expression;
  int line = 0;
};

struct SystemDeclaration {
  std::string source;
  std::string name;
  std::vector<std::string> coordinates;
  std::vector<std::string> parameters;
  std::vector<std::string> gauge_functions{"eps"};
  std::string lagrangian;
  std::optional<std::string> hamiltonian;
  std::optional<std::vector<std::string>> primary_constraints;
  std::vector<GeneratorDeclaration> generators;
  std::vector<SeedDeclaration> gauge_seeds;
  DeclarationOptions options;
  // Line of each top-level key, for expression errors raised downstream.
  std::map<std::string, int> lines;

  int line_of(const std::string& key) const;
};

/// Parses the TOML declaration format and validates it against the schema.
SystemDeclaration parse_declaration(const std::string& text, const std::string& source = "<input>");
SystemDeclaration load_declaration(const std::filesystem::path& path);

/// Coordinates, parameters and gauge functions of the declaration.
SymbolTable symbol_table(const SystemDeclaration& decl);

}  // namespace noether

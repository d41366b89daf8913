#include "noether/declaration.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

namespace noether {

namespace {

int line_of(const toml::node& n) { return static_cast<int>(n.source().begin.line); }

class Reader {
 public:
  Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(int line, const std::string& what) const { throw DeclarationError(source_, line, what); }

  std::string string(const toml::node& n, const std::string& key) const {
    auto v = n.value<std::string>();
    if (!v) fail(line_of(n), key + " must be a string");
    return *v;
  }

  std::vector<std::string> strings(const toml::node& n, const std::string& key) const {
    const toml::array* a = n.as_array();
    if (a == nullptr) fail(line_of(n), key + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : *a) out.push_back(string(e, key + " entry"));
    return out;
  }

  std::int64_t integer(const toml::node& n, const std::string& key, std::int64_t lo) const {
    auto v = n.value_exact<std::int64_t>();
    if (!v) fail(line_of(n), key + " must be an integer");
    if (*v < lo) fail(line_of(n), key + " must be at least " + std::to_string(lo));
    return *v;
  }

  void check_identifiers(const toml::node& n, const std::vector<std::string>& names, const std::string& key) const {
    for (const auto& s : names) {
      bool ok = !s.empty() && std::isalpha(static_cast<unsigned char>(s[0])) != 0;
      for (char c : s) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_');
      if (!ok) fail(line_of(n), key + ": '" + s + "' is not an identifier");
    }
  }

 private:
  std::string source_;
};

}  // namespace

DeclarationError::DeclarationError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

int SystemDeclaration::line_of(const std::string& key) const {
  auto it = lines.find(key);
  return it == lines.end() ? 0 : it->second;
}

SystemDeclaration parse_declaration(const std::string& text, const std::string& source) {
  Reader rd(source);
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    rd.fail(static_cast<int>(e.source().begin.line), std::string(e.description()));
  }

  SystemDeclaration d;
  d.source = source;
  static const std::set<std::string> known{"name",       "coordinates",         "parameters", "gauge_functions",
                                           "lagrangian", "hamiltonian",         "primary_constraints",
                                           "generators", "gauge_seeds",         "options"};
  for (const auto& [k, v] : root) {
    std::string key(k.str());
    if (known.count(key) == 0) rd.fail(line_of(v), "unknown key '" + key + "'");
    d.lines[key] = line_of(v);
  }
  for (const char* required : {"name", "coordinates", "lagrangian"})
    if (!root.contains(required)) rd.fail(1, std::string("missing required key '") + required + "'");

  d.name = rd.string(*root.get("name"), "name");
  d.coordinates = rd.strings(*root.get("coordinates"), "coordinates");
  if (d.coordinates.empty()) rd.fail(d.line_of("coordinates"), "coordinates must not be empty");
  rd.check_identifiers(*root.get("coordinates"), d.coordinates, "coordinates");
  if (const auto* n = root.get("parameters")) {
    d.parameters = rd.strings(*n, "parameters");
    rd.check_identifiers(*n, d.parameters, "parameters");
  }
  if (const auto* n = root.get("gauge_functions")) {
    d.gauge_functions = rd.strings(*n, "gauge_functions");
    rd.check_identifiers(*n, d.gauge_functions, "gauge_functions");
  }
  d.lagrangian = rd.string(*root.get("lagrangian"), "lagrangian");
  if (const auto* n = root.get("hamiltonian")) d.hamiltonian = rd.string(*n, "hamiltonian");
  if (const auto* n = root.get("primary_constraints")) d.primary_constraints = rd.strings(*n, "primary_constraints");

  if (const auto* n = root.get("gauge_seeds")) {
    const toml::array* a = n->as_array();
    if (a == nullptr) rd.fail(line_of(*n), "gauge_seeds must be an array of strings");
    for (const auto& e : *a) d.gauge_seeds.push_back({rd.string(e, "gauge_seeds entry"), line_of(e)});
  }

  if (const auto* n = root.get("generators")) {
    const toml::array* a = n->as_array();
    if (a == nullptr) rd.fail(line_of(*n), "generators must be an array of tables ([[generators]])");
    for (const auto& e : *a) {
      const toml::table* t = e.as_table();
      if (t == nullptr) rd.fail(line_of(e), "each generator must be a table");
      for (const auto& [k, v] : *t)
        if (k.str() != "name" && k.str() != "expression")
          rd.fail(line_of(v), "unknown generator key '" + std::string(k.str()) + "'");
      const auto* expr = t->get("expression");
      if (expr == nullptr) rd.fail(line_of(e), "generator without expression");
      GeneratorDeclaration g;
      g.expression = rd.string(*expr, "generator expression");
      g.line = line_of(*expr);
      g.name = t->contains("name") ? rd.string(*t->get("name"), "generator name")
                                   : "G" + std::to_string(d.generators.size() + 1);
      d.generators.push_back(std::move(g));
    }
  }

  if (const auto* n = root.get("options")) {
    const toml::table* t = n->as_table();
    if (t == nullptr) rd.fail(line_of(*n), "options must be a table");
    for (const auto& [k, v] : *t) {
      std::string key(k.str());
      if (key == "max_stabilization_depth") {
        d.options.max_stabilization_depth = static_cast<int>(rd.integer(v, key, 1));
      } else if (key == "ansatz_degree") {
        d.options.ansatz_degree = static_cast<int>(rd.integer(v, key, 0));
      } else if (key == "gauge_depth") {
        d.options.gauge_depth = static_cast<int>(rd.integer(v, key, 1));
      } else if (key == "probe_seed") {
        d.options.probe_seed = static_cast<std::uint64_t>(rd.integer(v, key, 0));
      } else if (key == "probe_points") {
        d.options.probe_points = static_cast<int>(rd.integer(v, key, 1));
      } else {
        rd.fail(line_of(v), "unknown option '" + key + "'");
      }
    }
  }
  return d;
}

SystemDeclaration load_declaration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DeclarationError(path.string(), 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_declaration(ss.str(), path.string());
}

SymbolTable symbol_table(const SystemDeclaration& decl) {
  SymbolTable t;
  try {
    for (const auto& c : decl.coordinates) t.add_coordinate(c);
    for (const auto& p : decl.parameters) t.add_parameter(p);
    for (const auto& g : decl.gauge_functions) t.add_gauge_function(g);
  } catch (const std::exception& e) {
    throw DeclarationError(decl.source, decl.line_of("coordinates"), e.what());
  }
  return t;
}

}  // namespace noether

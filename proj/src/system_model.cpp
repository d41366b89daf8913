#include "noether/system_model.hpp"

#include "noether/calculus.hpp"
#include "noether/zero.hpp"

namespace noether {

namespace {

std::vector<std::string> multiplier_names(const std::string& base, std::size_t k) {
  if (k == 1) return {base};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(base + std::to_string(i));
  return out;
}

}  // namespace

SystemModel build_system(std::string name, SymbolTable symbols, const Expr& lagrangian) {
  SystemModel sys;
  sys.name = std::move(name);
  sys.lagrangian = lagrangian;
  for (const auto& c : symbols.coordinates()) {
    sys.q.push_back(coordinate_symbol(c));
    sys.qdot.push_back(velocity_symbol(c));
    sys.qddot.push_back(acceleration_symbol(c));
    sys.p.push_back(momentum_symbol(c));
  }
  for (const auto& s : free_symbols(lagrangian)) {
    switch (s.kind()) {
      case SymbolKind::time: throw ModelError("the Lagrangian must not depend on t");
      case SymbolKind::momentum: throw ModelError("the Lagrangian must not contain momenta (" + s.name() + ")");
      case SymbolKind::acceleration: throw ModelError("the Lagrangian must be first order (" + s.name() + ")");
      case SymbolKind::gauge_function_derivative:
        throw ModelError("the Lagrangian must not contain gauge functions (" + s.name() + ")");
      case SymbolKind::free_parameter: throw ModelError("the Lagrangian must not contain " + s.name());
      default: break;
    }
  }

  const std::size_t n = sys.q.size();
  for (std::size_t i = 0; i < n; ++i) sys.momenta.push_back(diff(lagrangian, sys.qdot[i]));
  sys.hessian = SymMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sys.hessian(i, j) = diff(sys.momenta[i], sys.qdot[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!is_zero(sys.hessian(i, j) - sys.hessian(j, i)))
        throw ModelError("internal: Hessian is not symmetric");
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> a{diff(lagrangian, sys.q[i])};
    std::vector<Expr> el;
    for (std::size_t j = 0; j < n; ++j) {
      a.push_back(-(Expr(sys.qdot[j]) * diff(sys.momenta[i], sys.q[j])));
      el.push_back(-(Expr(sys.qddot[j]) * sys.hessian(j, i)));
    }
    sys.alpha.push_back(make_add(std::move(a)));
    el.push_back(sys.alpha.back());
    sys.euler_lagrange.push_back(make_add(std::move(el)));
  }
  sys.kernel = null_space(sys.hessian);
  for (const auto& w : sys.kernel.warnings) sys.warnings.push_back(w);
  for (const auto& g : sys.kernel.vectors)
    for (const auto& c : sys.hessian * g)
      if (!is_zero(c)) throw ModelError("internal: kernel vector not annihilated by the Hessian");

  const std::size_t k = sys.kernel.vectors.size();
  for (const auto& nm : multiplier_names("lambda", k)) {
    symbols.add_free_parameter(nm);
    sys.lambda.push_back(free_parameter_symbol(nm));
  }
  for (const auto& nm : multiplier_names("eta", k)) {
    symbols.add_free_parameter(nm);
    sys.eta.push_back(free_parameter_symbol(nm));
  }
  sys.symbols = std::move(symbols);
  return sys;
}

Expr total_time_derivative(const SystemModel& sys, const Expr& f) {
  if (depends_on_kind(f, SymbolKind::momentum))
    throw std::invalid_argument("total_time_derivative: momentum symbol in " + to_string(f));
  std::vector<Expr> parts{time_partial(f)};
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    parts.push_back(Expr(sys.qdot[i]) * diff(f, sys.q[i]));
    parts.push_back(Expr(sys.qddot[i]) * diff(f, sys.qdot[i]));
    if (f.may_contain(sys.qddot[i]) && depends_on(f, sys.qddot[i]))
      throw std::invalid_argument("total_time_derivative: acceleration symbol in " + to_string(f));
  }
  return make_add(std::move(parts));
}

VectorField kernel_field(const SystemModel& sys, std::size_t mu) {
  VectorField g;
  g.space = Space::velocity;
  g.name = sys.gammas().size() == 1 ? "Gamma" : "Gamma" + std::to_string(mu + 1);
  for (std::size_t i = 0; i < sys.dim(); ++i)
    if (!sys.gammas()[mu][i].is_zero_literal()) g.components[sys.qdot[i]] = sys.gammas()[mu][i];
  return g;
}

ExprVector primary_lagrangian_constraints(const SystemModel& sys) {
  ExprVector out;
  for (const auto& g : sys.gammas()) {
    std::vector<Expr> parts;
    for (std::size_t i = 0; i < sys.dim(); ++i) parts.push_back(sys.alpha[i] * g[i]);
    out.push_back(make_add(std::move(parts)));
  }
  return out;
}

Accelerations solve_accelerations(const SystemModel& sys, const std::function<bool(const Expr&)>& weakly_zero) {
  LinearSolution sol = solve_linear_modulo(sys.hessian, sys.alpha, weakly_zero);
  return {sol.particular, sol.residues};
}

VectorField lagrangian_evolution_field(const SystemModel& sys, const Accelerations& acc, bool with_eta) {
  VectorField x;
  x.space = Space::velocity;
  x.name = with_eta ? "XL" : "XL0";
  x.time = Expr(1);
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    x.components[sys.q[i]] = Expr(sys.qdot[i]);
    std::vector<Expr> a{acc.a[i]};
    if (with_eta)
      for (std::size_t mu = 0; mu < sys.gammas().size(); ++mu)
        a.push_back(Expr(sys.eta[mu]) * sys.gammas()[mu][i]);
    Expr c = make_add(std::move(a));
    if (!c.is_zero_literal()) x.components[sys.qdot[i]] = c;
  }
  if (with_eta) x.free_parameters = sys.eta;
  return x;
}

}  // namespace noether

#include "noether/evolution.hpp"

namespace noether {

namespace {

void require_phase_space(const Expr& e, const char* where) {
  if (depends_on_kind(e, SymbolKind::velocity) || depends_on_kind(e, SymbolKind::acceleration))
    throw std::invalid_argument(std::string(where) + ": velocity symbol in " + to_string(e));
}

}  // namespace

Expr poisson_bracket(const SystemModel& sys, const Expr& f, const Expr& g) {
  require_phase_space(f, "poisson_bracket");
  require_phase_space(g, "poisson_bracket");
  std::vector<Expr> parts;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    parts.push_back(diff(f, sys.q[i]) * diff(g, sys.p[i]));
    parts.push_back(-(diff(f, sys.p[i]) * diff(g, sys.q[i])));
  }
  return make_add(std::move(parts));
}

Expr apply_K(const SystemModel& sys, const LegendreMap& map, const Expr& h) {
  require_phase_space(h, "apply_K");
  std::vector<Expr> parts{pull_back(map, time_partial(h))};
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    parts.push_back(pull_back(map, diff(h, sys.q[i])) * Expr(sys.qdot[i]));
    parts.push_back(pull_back(map, diff(h, sys.p[i])) * diff(sys.lagrangian, sys.q[i]));
  }
  return make_add(std::move(parts));
}

Expr apply_K_el_form(const SystemModel& sys, const LegendreMap& map, const Expr& h) {
  require_phase_space(h, "apply_K_el_form");
  std::vector<Expr> parts{total_time_derivative(sys, pull_back(map, h))};
  for (std::size_t i = 0; i < sys.dim(); ++i)
    parts.push_back(sys.euler_lagrange[i] * pull_back(map, diff(h, sys.p[i])));
  return make_add(std::move(parts));
}

Expr apply_K_h_form(const SystemModel& sys, const LegendreMap& map, const Expr& h) {
  require_phase_space(h, "apply_K_h_form");
  std::vector<Expr> parts{pull_back(map, time_partial(h)), pull_back(map, poisson_bracket(sys, h, map.hamiltonian))};
  for (std::size_t mu = 0; mu < map.primary.size(); ++mu)
    parts.push_back(pull_back(map, poisson_bracket(sys, h, map.primary[mu])) * map.v[mu]);
  return make_add(std::move(parts));
}

VectorField hamiltonian_vector_field(const SystemModel& sys, const Expr& g, const std::string& name) {
  VectorField v;
  v.space = Space::phase;
  v.name = name;
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    Expr dq = diff(g, sys.p[i]);
    Expr dp = -diff(g, sys.q[i]);
    if (!dq.is_zero_literal()) v.components[sys.q[i]] = dq;
    if (!dp.is_zero_literal()) v.components[sys.p[i]] = dp;
  }
  return v;
}

VectorField hamiltonian_evolution_field(const SystemModel& sys, const LegendreMap& map) {
  // {z, H + lambda phi} with lambda held fixed.
  VectorField x;
  x.space = Space::phase;
  x.name = "XH";
  x.time = Expr(1);
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    std::vector<Expr> dq{diff(map.hamiltonian, sys.p[i])};
    std::vector<Expr> dp{-diff(map.hamiltonian, sys.q[i])};
    for (std::size_t mu = 0; mu < map.primary.size(); ++mu) {
      dq.push_back(Expr(sys.lambda[mu]) * diff(map.primary[mu], sys.p[i]));
      dp.push_back(-(Expr(sys.lambda[mu]) * diff(map.primary[mu], sys.q[i])));
    }
    Expr cq = make_add(std::move(dq));
    Expr cp = make_add(std::move(dp));
    if (!cq.is_zero_literal()) x.components[sys.q[i]] = cq;
    if (!cp.is_zero_literal()) x.components[sys.p[i]] = cp;
  }
  x.free_parameters = sys.lambda;
  return x;
}

}  // namespace noether

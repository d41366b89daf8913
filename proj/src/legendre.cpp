#include "noether/legendre.hpp"

#include "noether/terms.hpp"
#include "noether/zero.hpp"

namespace noether {

namespace {

bool has_velocity(const Expr& e) {
  return depends_on_kind(e, SymbolKind::velocity) || depends_on_kind(e, SymbolKind::acceleration);
}

// e = A*v + B with A free of v and not zero.
std::optional<std::pair<Expr, Expr>> affine_in(const Expr& e, const Symbol& v) {
  std::map<Exponents, Expr> c;
  try {
    c = coefficients_in(e, {v});
  } catch (const NotPolynomial&) {
    return std::nullopt;
  }
  Expr a, b;
  for (const auto& [k, coeff] : c) {
    if (k[0] == 0) b = coeff;
    else if (k[0] == 1) a = coeff;
    else return std::nullopt;
  }
  if (a.is_zero_literal() || is_zero(a)) return std::nullopt;
  return std::make_pair(a, b);
}

}  // namespace

Expr pull_back(const LegendreMap& map, const Expr& h) {
  if (has_velocity(h)) throw std::invalid_argument("pull_back: velocity symbol in " + to_string(h));
  return substitute(h, map.momentum_bindings);
}

Projectability is_projectable(const SystemModel& sys, const Expr& f) {
  Projectability out;
  for (std::size_t mu = 0; mu < sys.gammas().size(); ++mu) {
    Expr r = apply(kernel_field(sys, mu), f);
    out.residuals.push_back(r);
    if (!is_zero(r)) out.projectable = false;
  }
  return out;
}

void derive_primary_constraints(const SystemModel& sys, LegendreMap& map) {
  const std::size_t n = sys.dim();
  std::vector<bool> used(n, false);
  Bindings solved;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n && !changed; ++i) {
      if (used[i]) continue;
      Expr e = substitute(sys.momenta[i], solved);
      if (!has_velocity(e)) continue;
      std::vector<std::size_t> order{i};
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) order.push_back(j);
      for (std::size_t j : order) {
        const Symbol& v = sys.qdot[j];
        if (solved.count(v) != 0 || !depends_on(e, v)) continue;
        auto ab = affine_in(e, v);
        if (!ab) continue;
        Expr image = (Expr(sys.p[i]) - ab->second) / ab->first;
        for (auto& [w, img] : solved) img = substitute(img, {{v, image}});
        solved.emplace(v, image);
        used[i] = true;
        changed = true;
        break;
      }
    }
  }
  map.primary.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    Expr e = substitute(sys.momenta[i], solved);
    if (has_velocity(e))
      throw LegendreError("cannot eliminate velocities from the momentum binding p_" + sys.q[i].name() + " = " +
                          to_string(sys.momenta[i]) + "; declare primary_constraints explicitly");
    map.primary.push_back(Expr(sys.p[i]) - e);
  }
  if (map.primary.size() != sys.gammas().size())
    throw LegendreError("derived " + std::to_string(map.primary.size()) + " primary constraints but the Hessian has " +
                        std::to_string(sys.gammas().size()) + " null vectors");
  map.velocity_solutions = std::move(solved);
  map.constraints_derived = true;
}

Expr lagrangian_energy(const SystemModel& sys) {
  std::vector<Expr> parts{-sys.lagrangian};
  for (std::size_t i = 0; i < sys.dim(); ++i) parts.push_back(sys.momenta[i] * Expr(sys.qdot[i]));
  return make_add(std::move(parts));
}

std::optional<Expr> derive_hamiltonian(const SystemModel& sys, const LegendreMap& map) {
  Expr h = substitute(lagrangian_energy(sys), map.velocity_solutions);
  for (const auto& v : sys.qdot) {
    if (!depends_on(h, v)) continue;
    if (!is_zero(diff(h, v))) return std::nullopt;
    h = substitute(h, {{v, Expr(0)}});
  }
  if (has_velocity(h)) return std::nullopt;
  return h;
}

HamiltonianCheck verify_hamiltonian(const SystemModel& sys, const LegendreMap& map, const Expr& h) {
  HamiltonianCheck out;
  out.residual = pull_back(map, h) - lagrangian_energy(sys);
  out.ok = is_zero(out.residual);
  if (out.ok || map.primary.empty()) return out;
  // Retry against a derived Hamiltonian, modulo the primary constraints.
  if (map.velocity_solutions.empty()) return out;
  if (auto derived = derive_hamiltonian(sys, map)) {
    Expr diff_h = clear_denominators(h - *derived);
    if (match_combination(diff_h, map.primary)) {
      out.ok = true;
      out.modulo_primaries = true;
    }
  }
  return out;
}

void align_kernel(SystemModel& sys, const LegendreMap& map) {
  const std::size_t n = sys.dim();
  const std::size_t k = map.primary.size();
  for (const auto& phi : map.primary) {
    if (has_velocity(phi)) throw LegendreError("primary constraint " + to_string(phi) + " contains velocities");
    if (!is_zero(pull_back(map, phi)))
      throw LegendreError("primary constraint " + to_string(phi) + " does not vanish under the Legendre map");
  }
  if (k != sys.gammas().size())
    throw LegendreError(std::to_string(k) + " primary constraints declared but the Hessian has " +
                        std::to_string(sys.gammas().size()) + " null vectors");
  SymMatrix jac(k, 2 * n);
  std::vector<ExprVector> aligned;
  for (std::size_t mu = 0; mu < k; ++mu) {
    ExprVector g;
    for (std::size_t i = 0; i < n; ++i) {
      jac(mu, i) = diff(map.primary[mu], sys.q[i]);
      jac(mu, n + i) = diff(map.primary[mu], sys.p[i]);
      g.push_back(pull_back(map, jac(mu, n + i)));
    }
    for (const auto& c : sys.hessian * g)
      if (!is_zero(c)) throw LegendreError("FL*(d phi/dp) is not a null vector of the Hessian for " +
                                           to_string(map.primary[mu]));
    aligned.push_back(std::move(g));
  }
  if (rank(jac) != k) throw LegendreError("primary constraints are not independent");
  if (k > 0 && rank(SymMatrix::from_rows(aligned)) != k)
    throw LegendreError("FL*(d phi/dp) does not span the Hessian kernel");
  sys.kernel.vectors = std::move(aligned);
}

void solve_v_multipliers(const SystemModel& sys, LegendreMap& map) {
  const std::size_t n = sys.dim();
  const std::size_t k = map.primary.size();
  map.v.clear();
  if (k == 0) return;
  SymMatrix m(n, k);
  ExprVector rhs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t mu = 0; mu < k; ++mu) m(i, mu) = sys.gammas()[mu][i];
    rhs.push_back(Expr(sys.qdot[i]) - pull_back(map, diff(map.hamiltonian, sys.p[i])));
  }
  LinearSolution sol;
  try {
    sol = solve_linear(m, rhs);
  } catch (const InconsistentSystem& e) {
    throw LegendreError(std::string("multipliers v: ") + e.what() + " (wrong Hamiltonian or constraints?)");
  }
  map.v = sol.particular;
  for (std::size_t nu = 0; nu < k; ++nu) {
    VectorField g = kernel_field(sys, nu);
    for (std::size_t mu = 0; mu < k; ++mu)
      if (!is_zero(apply(g, map.v[mu]) - Expr(mu == nu ? 1 : 0)))
        throw LegendreError("Gamma_nu . v^mu is not the identity");
  }
}

LegendreMap build_legendre(SystemModel& sys, const std::optional<Expr>& hamiltonian,
                           const std::optional<ExprVector>& primary) {
  LegendreMap map;
  for (std::size_t i = 0; i < sys.dim(); ++i) map.momentum_bindings.emplace(sys.p[i], sys.momenta[i]);
  if (primary) {
    map.primary = *primary;
    map.notes.push_back("primary constraints supplied by the declaration and verified");
    try {
      LegendreMap scratch = map;
      derive_primary_constraints(sys, scratch);
      map.velocity_solutions = scratch.velocity_solutions;
    } catch (const LegendreError&) {
    }
  } else {
    derive_primary_constraints(sys, map);
  }
  if (hamiltonian) {
    map.hamiltonian = *hamiltonian;
  } else {
    auto h = derive_hamiltonian(sys, map);
    if (!h) throw LegendreError("cannot rewrite the energy in phase space; declare a hamiltonian");
    map.hamiltonian = *h;
    map.hamiltonian_derived = true;
  }
  if (has_velocity(map.hamiltonian)) throw LegendreError("the Hamiltonian must not contain velocities");
  HamiltonianCheck hc = verify_hamiltonian(sys, map, map.hamiltonian);
  if (!hc.ok)
    throw LegendreError("Hamiltonian does not pull back to the Lagrangian energy; residual " + to_string(hc.residual));
  align_kernel(sys, map);
  solve_v_multipliers(sys, map);
  return map;
}

}  // namespace noether

#include "noether/properties.hpp"

#include "noether/parse.hpp"
#include "noether/zero.hpp"

namespace noether {

namespace {

SymbolTable random_table() {
  SymbolTable t;
  t.add_coordinate("x");
  t.add_coordinate("y");
  t.add_parameter("a");
  t.add_gauge_function("eps");
  return t;
}

std::vector<Symbol> random_symbols(const SymbolTable& t) {
  std::vector<Symbol> out;
  for (const char* n : {"x", "y", "xdot", "p_y", "a", "t", "epsdot"}) out.push_back(*t.lookup(n));
  return out;
}

std::vector<Symbol> phase_symbols(const SystemModel& sys) {
  std::vector<Symbol> out(sys.q);
  out.insert(out.end(), sys.p.begin(), sys.p.end());
  return out;
}

// Polynomial vector field on the phase chart, no free parameters.
VectorField random_phase_field(const SystemModel& sys, std::mt19937_64& rng, const std::string& name) {
  VectorField v;
  v.space = Space::phase;
  v.name = name;
  for (const auto& z : phase_symbols(sys)) v.components[z] = random_phase_polynomial(sys, rng, 2, 3);
  return v;
}

}  // namespace

void PropertyResult::record(bool pass, const std::string& what) {
  ++instances;
  if (pass) return;
  if (failures == 0) first_failure = what;
  ++failures;
}

Expr random_expr(const std::vector<Symbol>& syms, std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 11);
  std::uniform_int_distribution<std::size_t> sym(0, syms.size() - 1);
  std::uniform_int_distribution<int> num(-4, 4);
  int k = depth <= 0 ? pick(rng) % 2 : pick(rng);
  switch (k) {
    case 0:
      return Expr(Rational(num(rng), std::uniform_int_distribution<int>(1, 3)(rng)));
    case 1:
      return Expr(syms[sym(rng)]);
    case 2:
    case 3:
      return random_expr(syms, rng, depth - 1) + random_expr(syms, rng, depth - 1);
    case 4:
    case 5:
      return random_expr(syms, rng, depth - 1) * random_expr(syms, rng, depth - 1);
    case 6: {
      Expr d = random_expr(syms, rng, depth - 1);
      if (d.is_zero_literal()) d = Expr(syms[sym(rng)]);
      return random_expr(syms, rng, depth - 1) / d;
    }
    case 7: {
      Expr b = random_expr(syms, rng, depth - 1);
      int e = std::uniform_int_distribution<int>(-2, 2)(rng);
      if (b.is_zero_literal() && e < 0) e = 2;
      return pow(b, e);
    }
    case 8:
      return exp(random_expr(syms, rng, depth - 1));
    case 9:
      return sin(random_expr(syms, rng, depth - 1));
    case 10:
      return cos(random_expr(syms, rng, depth - 1));
    default: {
      Expr a = Expr(syms[sym(rng)]);
      return std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? log(a) : sqrt(a);
    }
  }
}

Expr rebuild(const Expr& e) {
  switch (e.kind()) {
    case NodeKind::number:
    case NodeKind::symbol:
      return e;
    case NodeKind::pow:
      return make_pow(rebuild(e.base()), e.exponent());
    case NodeKind::func:
      return make_func(e.func(), rebuild(e.args()[0]));
    case NodeKind::mul: {
      std::vector<Expr> f;
      for (const auto& a : e.args()) f.push_back(rebuild(a));
      return make_mul(std::move(f));
    }
    case NodeKind::add: {
      std::vector<Expr> t;
      for (const auto& a : e.args()) t.push_back(rebuild(a));
      return make_add(std::move(t));
    }
  }
  return e;
}

PropertyResult parse_round_trip(std::uint64_t seed, int n) {
  PropertyResult r{"parse/print round trip"};
  SymbolTable t = random_table();
  auto syms = random_symbols(t);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    Expr e = random_expr(syms, rng, 1 + i % 6);
    std::string s = to_string(e);
    bool ok = false;
    try {
      ok = parse(s, t) == e;
    } catch (const std::exception&) {
      ok = false;
    }
    r.record(ok, s);
  }
  return r;
}

PropertyResult canonical_idempotence(std::uint64_t seed, int n) {
  PropertyResult r{"canonicalization idempotence"};
  SymbolTable t = random_table();
  auto syms = random_symbols(t);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    Expr e = random_expr(syms, rng, 1 + i % 6);
    r.record(rebuild(e) == e && rebuild(rebuild(e)) == rebuild(e), to_string(e));
  }
  return r;
}

PropertyResult k_three_forms(const Analysis& an, std::uint64_t seed, int n) {
  PropertyResult r{"K three-form agreement"};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    Expr h = random_phase_polynomial(an.sys, rng);
    if (i % 2 == 1) h = h + Expr(time_symbol()) * random_phase_polynomial(an.sys, rng, 1, 2);
    Expr k = apply_K(an.sys, an.map, h);
    bool ok = is_zero(k - apply_K_el_form(an.sys, an.map, h)) && is_zero(k - apply_K_h_form(an.sys, an.map, h));
    r.record(ok, to_string(h));
  }
  return r;
}

PropertyResult gamma_k(const Analysis& an, std::uint64_t seed, int n) {
  PropertyResult r{"Gamma_mu . (K h) = FL*{h, phi_mu}"};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    Expr h = random_phase_polynomial(an.sys, rng);
    Expr k = apply_K(an.sys, an.map, h);
    bool ok = true;
    for (std::size_t mu = 0; mu < an.map.primary.size(); ++mu) {
      Expr lhs = apply(kernel_field(an.sys, mu), k);
      Expr rhs = pull_back(an.map, poisson_bracket(an.sys, h, an.map.primary[mu]));
      ok = ok && is_zero(lhs - rhs);
    }
    r.record(ok, to_string(h));
  }
  return r;
}

PropertyResult gamlam(const Analysis& an) {
  PropertyResult r{"Gamma_nu . v^mu = delta"};
  for (std::size_t nu = 0; nu < an.sys.gammas().size(); ++nu)
    for (std::size_t mu = 0; mu < an.map.v.size(); ++mu) {
      Expr g = apply(kernel_field(an.sys, nu), an.map.v[mu]);
      r.record(is_zero(g - Expr(nu == mu ? 1 : 0)), to_string(g));
    }
  return r;
}

PropertyResult primlag(const Analysis& an) {
  PropertyResult r{"alpha . gamma_mu = K . phi_mu"};
  ExprVector chi = primary_lagrangian_constraints(an.sys);
  for (std::size_t mu = 0; mu < an.map.primary.size(); ++mu) {
    Expr d = chi[mu] - apply_K(an.sys, an.map, an.map.primary[mu]);
    r.record(is_zero(d), to_string(d));
  }
  return r;
}

PropertyResult poisson_identities(const Analysis& an, std::uint64_t seed, int n) {
  PropertyResult r{"Poisson bracket antisymmetry and Jacobi"};
  std::mt19937_64 rng(seed);
  const SystemModel& s = an.sys;
  for (int i = 0; i < n; ++i) {
    Expr f = random_phase_polynomial(s, rng), g = random_phase_polynomial(s, rng), h = random_phase_polynomial(s, rng);
    bool anti = is_zero(poisson_bracket(s, f, g) + poisson_bracket(s, g, f));
    Expr jac = poisson_bracket(s, f, poisson_bracket(s, g, h)) + poisson_bracket(s, g, poisson_bracket(s, h, f)) +
               poisson_bracket(s, h, poisson_bracket(s, f, g));
    r.record(anti && is_zero(jac), to_string(f) + ", " + to_string(g) + ", " + to_string(h));
  }
  return r;
}

PropertyResult lie_identities(const Analysis& an, std::uint64_t seed, int n) {
  PropertyResult r{"Lie bracket antisymmetry and Jacobi"};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n; ++i) {
    VectorField a = random_phase_field(an.sys, rng, "A"), b = random_phase_field(an.sys, rng, "B"),
                c = random_phase_field(an.sys, rng, "C");
    VectorField ab = lie_bracket(a, b), ba = lie_bracket(b, a);
    VectorField j1 = lie_bracket(a, lie_bracket(b, c)), j2 = lie_bracket(b, lie_bracket(c, a)),
                j3 = lie_bracket(c, lie_bracket(a, b));
    bool ok = true;
    for (const auto& z : phase_symbols(an.sys)) {
      ok = ok && is_zero(ab.component(z) + ba.component(z));
      ok = ok && is_zero(j1.component(z) + j2.component(z) + j3.component(z));
    }
    r.record(ok, to_string(a) + " | " + to_string(b));
  }
  return r;
}

PropertyResult reduce_certificates(const Analysis& an, std::uint64_t seed, int n) {
  PropertyResult r{"reduce_mod certificate expansion"};
  std::mt19937_64 rng(seed);
  const ConstraintSet& cs = an.hamiltonian_chain();
  if (cs.empty()) return r;
  for (int i = 0; i < n; ++i) {
    std::vector<Expr> parts;
    for (const auto& c : cs.all()) parts.push_back(random_phase_polynomial(an.sys, rng, 2, 3) * c.expr);
    Expr f = make_add(std::move(parts));
    bool ok = false;
    try {
      Reduction red = reduce_mod(f, cs);
      std::vector<Expr> back{red.normal_form};
      for (std::size_t k = 0; k < cs.size(); ++k) back.push_back(red.combination[k] * cs.all()[k].expr);
      ok = red.reduced_to_zero() && is_zero(make_add(std::move(back)) - f);
    } catch (const UnsupportedReduction&) {
      ok = false;
    }
    r.record(ok, to_string(f));
  }
  return r;
}

PropertyResult generating_family(const Analysis& an, const std::vector<GeneratorCandidate>& gs, std::uint64_t seed,
                                 int n) {
  PropertyResult r{"generating family decides delta^L K = K delta^H"};
  for (const auto& g : gs) {
    CommutationResult c = check_commutation_with_K(an, g, seed, n);
    std::size_t family = 4 * an.sys.dim();
    bool fam = true, rnd = true;
    for (std::size_t k = 0; k < c.probes.size(); ++k) {
      bool z = is_zero(c.probes[k].difference);
      if (k < family) {
        fam = fam && z;
      } else {
        rnd = rnd && z;
      }
    }
    // Vanishing on the family forces vanishing everywhere.
    r.record(!fam || rnd, g.name);
  }
  return r;
}

PropertyResult theorem3(const Analysis& an, const std::vector<GeneratorCandidate>& gs, std::uint64_t seed) {
  PropertyResult r{"K.G identities for delta^L K - K delta^H"};
  for (const auto& g : gs) {
    CommutationResult c = check_commutation_with_K(an, g, seed);
    r.record(c.theorem3_ok, g.name);
  }
  return r;
}

}  // namespace noether

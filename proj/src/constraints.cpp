#include "noether/constraints.hpp"

#include <set>

#include "noether/evolution.hpp"
#include "noether/terms.hpp"
#include "noether/zero.hpp"

namespace noether {

namespace {

bool solvable_kind(Side side, SymbolKind k) {
  if (side == Side::hamiltonian) return k == SymbolKind::momentum || k == SymbolKind::coordinate;
  return k == SymbolKind::velocity || k == SymbolKind::coordinate;
}

int kind_rank(Side side, SymbolKind k) {
  if (side == Side::hamiltonian) return k == SymbolKind::momentum ? 0 : 1;
  return k == SymbolKind::velocity ? 0 : 1;
}

// f(s) - f(s*) = (s - s*) * Q for f polynomial in s.
Expr division_quotient(const Expr& f, const Symbol& s, const Expr& image) {
  std::map<Exponents, Expr> c;
  try {
    c = coefficients_in(f, {s});
  } catch (const NotPolynomial& e) {
    throw UnsupportedReduction("cannot reduce " + to_string(f) + " by the solved constraint for " + s.name() +
                               ": " + e.what());
  }
  std::vector<Expr> parts;
  for (const auto& [k, a] : c) {
    for (int j = 0; j < k[0]; ++j)
      parts.push_back(a * pow(Expr(s), j) * pow(image, k[0] - 1 - j));
  }
  return make_add(std::move(parts));
}

struct SolvedPass {
  Expr residue;
  ExprVector coeff;
};

SolvedPass reduce_solved(const Expr& f, const ConstraintSet& cs) {
  SolvedPass out{f, ExprVector(cs.size(), Expr(0))};
  const auto& items = cs.all();
  for (std::size_t k = 0; k < items.size(); ++k) {
    const Constraint& c = items[k];
    if (!c.solved_for || !out.residue.may_contain(*c.solved_for) || !depends_on(out.residue, *c.solved_for)) continue;
    Expr q = division_quotient(out.residue, *c.solved_for, c.solved_image);
    out.coeff[k] = out.coeff[k] + q / Expr(c.solved_scale);
    out.residue = substitute(out.residue, {{*c.solved_for, c.solved_image}});
  }
  return out;
}

}  // namespace

void ConstraintSet::add(const Expr& e, std::string origin, int level) {
  Constraint c;
  c.expr = e;
  c.origin = std::move(origin);
  c.level = level;
  std::set<Symbol> taken;
  for (const auto& it : items_)
    if (it.solved_for) taken.insert(*it.solved_for);
  std::optional<Symbol> best;
  Rational best_k;
  Expr best_rest;
  for (const auto& s : free_symbols(e)) {
    if (!solvable_kind(side_, s.kind()) || taken.count(s) != 0) continue;
    std::map<Exponents, Expr> co;
    try {
      co = coefficients_in(e, {s});
    } catch (const NotPolynomial&) {
      continue;
    }
    if (co.size() > 2) continue;
    auto lin = co.find(Exponents{1});
    if (lin == co.end() || !lin->second.is_number()) continue;
    if (co.size() == 2 && co.count(Exponents{0}) == 0) continue;
    Expr rest = co.count(Exponents{0}) != 0 ? co.at(Exponents{0}) : Expr(0);
    bool clean = true;
    for (const auto& t : taken)
      if (depends_on(rest, t)) clean = false;
    if (!clean) continue;
    if (!best || kind_rank(side_, s.kind()) < kind_rank(side_, best->kind())) {
      best = s;
      best_k = lin->second.number();
      best_rest = rest;
    }
  }
  if (best) {
    c.solved_for = best;
    c.solved_scale = best_k;
    c.solved_image = -best_rest / Expr(best_k);
  }
  items_.push_back(std::move(c));
}

ExprVector ConstraintSet::exprs() const {
  ExprVector out;
  for (const auto& c : items_) out.push_back(c.expr);
  return out;
}

int ConstraintSet::depth() const {
  int d = 0;
  for (const auto& c : items_) d = std::max(d, c.level + 1);
  return d;
}

std::vector<Constraint> ConstraintSet::level(int n) const {
  std::vector<Constraint> out;
  for (const auto& c : items_)
    if (c.level == n) out.push_back(c);
  return out;
}

ConstraintSet ConstraintSet::up_to_level(int n) const {
  ConstraintSet out(side_);
  for (const auto& c : items_)
    if (c.level <= n) out.items_.push_back(c);
  return out;
}

bool Reduction::reduced_to_zero() const { return is_zero(normal_form); }

Reduction reduce_mod(const Expr& f, const ConstraintSet& cs) {
  const auto& items = cs.all();
  SolvedPass first = reduce_solved(f, cs);
  Reduction out{first.residue, first.coeff};
  if (first.residue.is_zero_literal() || is_zero(first.residue)) {
    // Zero as a rational function even if not literally.
    out.normal_form = Expr(0);
    return out;
  }
  std::vector<std::size_t> idx;
  ExprVector gens;
  std::vector<ExprVector> gen_coeff;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (items[k].solved_for) continue;
    SolvedPass g = reduce_solved(items[k].expr, cs);
    if (is_zero(g.residue)) continue;
    idx.push_back(k);
    gens.push_back(g.residue);
    gen_coeff.push_back(g.coeff);
  }
  if (gens.empty()) return out;
  auto m = match_combination(first.residue, gens);
  if (!m) return out;
  // residue = sum_j m_j (c_j - sum_k R_jk c_k)
  for (std::size_t j = 0; j < gens.size(); ++j) {
    out.combination[idx[j]] = out.combination[idx[j]] + (*m)[j];
    for (std::size_t k = 0; k < items.size(); ++k)
      if (!gen_coeff[j][k].is_zero_literal()) out.combination[k] = out.combination[k] - (*m)[j] * gen_coeff[j][k];
  }
  out.normal_form = Expr(0);
  return out;
}

bool weakly_zero(const Expr& f, const ConstraintSet& cs) { return reduce_mod(f, cs).reduced_to_zero(); }

bool weak_equals(const Expr& f, const Expr& g, const ConstraintSet& cs) { return weakly_zero(f - g, cs); }

Stabilization stabilize_hamiltonian(const SystemModel& sys, const LegendreMap& map, int max_depth) {
  Stabilization st;
  for (const auto& phi : map.primary) st.chain.add(phi, "primary", 0);
  std::vector<Expr> frontier = map.primary;
  int level = 0;
  while (!frontier.empty()) {
    if (level >= max_depth)
      throw InconsistentDynamics("stabilization did not terminate within " + std::to_string(max_depth) +
                                 " generations");
    ++level;
    std::vector<Expr> next;
    for (const auto& phi : frontier) {
      std::vector<Expr> parts{time_partial(phi), poisson_bracket(sys, phi, map.hamiltonian)};
      for (std::size_t mu = 0; mu < map.primary.size(); ++mu)
        parts.push_back(Expr(sys.lambda[mu]) * poisson_bracket(sys, phi, map.primary[mu]));
      Expr residue = reduce_mod(make_add(std::move(parts)), st.chain).normal_form;
      if (is_zero(residue)) continue;
      bool has_lambda = false;
      for (const auto& l : sys.lambda)
        if (depends_on(residue, l)) has_lambda = true;
      if (has_lambda) {
        st.multiplier_determinations.push_back(residue);
        continue;
      }
      if (residue.is_number())
        throw InconsistentDynamics("inconsistent dynamics: stabilization of " + to_string(phi) + " requires " +
                                   to_string(residue) + " = 0");
      st.chain.add(residue, "{phi,H}", level);
      next.push_back(residue);
    }
    frontier = std::move(next);
  }
  st.generations = st.chain.depth();
  return st;
}

ConstraintSet lagrangian_constraint_chain(const SystemModel& sys, const LegendreMap& map, const ConstraintSet& ham) {
  ConstraintSet lag(Side::lagrangian);
  for (const auto& c : ham.all()) {
    Expr chi = apply_K(sys, map, c.expr);
    Expr r = reduce_mod(chi, lag).normal_form;
    if (is_zero(r)) continue;
    lag.add(r, "K.phi", c.level);
  }
  return lag;
}

FirstClassCheck is_first_class_wrt_primaries(const SystemModel& sys, const Expr& f, const ConstraintSet& primaries) {
  FirstClassCheck out;
  for (const auto& c : primaries.all()) {
    if (c.level != 0) continue;
    Expr b = poisson_bracket(sys, f, c.expr);
    Reduction r = reduce_mod(b, primaries);
    out.brackets.push_back(b);
    out.d.push_back(r.combination);
    out.residues.push_back(r.normal_form);
    if (!r.reduced_to_zero()) out.first_class = false;
  }
  return out;
}

}  // namespace noether

#include "noether/terms.hpp"

#include <set>

#include "noether/calculus.hpp"
#include "noether/symlinalg.hpp"

namespace noether {

namespace {

std::vector<Expr> factors_of(const Expr& rest) {
  if (rest.is_mul()) return {rest.args().begin(), rest.args().end()};
  if (rest.is_one()) return {};
  return {rest};
}

constexpr std::size_t kMaxCandidates = 4000;

struct CandidateLess {
  bool operator()(const std::pair<std::size_t, Expr>& x, const std::pair<std::size_t, Expr>& y) const {
    if (x.first != y.first) return x.first < y.first;
    return compare(x.second, y.second) < 0;
  }
};

}  // namespace

std::map<Exponents, Expr> coefficients_in(const Expr& e, const std::vector<Symbol>& vars) {
  std::map<Exponents, std::vector<Expr>> parts;
  for (const auto& t : terms_of(e)) {
    auto [c, rest] = split_coefficient(t);
    Exponents k(vars.size(), 0);
    std::vector<Expr> other{Expr(c)};
    for (const auto& f : factors_of(rest)) {
      std::optional<std::size_t> slot;
      const Expr* sym = nullptr;
      if (f.is_symbol()) sym = &f;
      else if (f.is_pow() && f.base().is_symbol()) sym = &f.base();
      if (sym != nullptr)
        for (std::size_t i = 0; i < vars.size(); ++i)
          if (sym->symbol() == vars[i]) slot = i;
      if (slot) {
        if (f.is_symbol()) {
          k[*slot] += 1;
          continue;
        }
        const Rational& n = f.exponent();
        if (n.get_den() != 1 || n < 0)
          throw NotPolynomial("factor " + to_string(f) + " is not a nonnegative integer power of " +
                              vars[*slot].name());
        k[*slot] += static_cast<int>(n.get_num().get_si());
        continue;
      }
      for (const auto& v : vars)
        if (depends_on(f, v))
          throw NotPolynomial("factor " + to_string(f) + " is not polynomial in " + v.name());
      other.push_back(f);
    }
    parts[k].push_back(make_mul(std::move(other)));
  }
  std::map<Exponents, Expr> out;
  for (auto& [k, ps] : parts) {
    Expr c = make_add(std::move(ps));
    if (!c.is_zero_literal()) out.emplace(k, c);
  }
  return out;
}

Expr monomial(const std::vector<Symbol>& vars, const Exponents& k) {
  std::vector<Expr> f;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (k[i] != 0) f.push_back(make_pow(Expr(vars[i]), Rational(k[i])));
  return make_mul(std::move(f));
}

std::map<Expr, Rational, ExprLess> term_map(const Expr& e) {
  std::map<Expr, Rational, ExprLess> out;
  for (const auto& t : terms_of(e)) {
    auto [c, rest] = split_coefficient(t);
    out[rest] += c;
  }
  return out;
}

std::optional<Expr> monomial_quotient(const Expr& a, const Expr& b) {
  Expr q = a / b;
  if (q.is_add()) return std::nullopt;
  Expr rest = split_coefficient(q).second;
  for (const auto& f : factors_of(rest))
    if (f.is_pow() && f.exponent() < 0 && !f.base().is_number()) return std::nullopt;
  return rest;
}

std::optional<std::vector<Expr>> match_combination(const Expr& target, const std::vector<Expr>& generators,
                                                   int rounds) {
  std::vector<Expr> zero(generators.size(), Expr(0));
  if (target.is_zero_literal()) return zero;
  if (generators.empty()) return std::nullopt;

  std::vector<std::map<Expr, Rational, ExprLess>> gen_terms;
  for (const auto& g : generators) gen_terms.push_back(term_map(g));

  struct Candidate {
    std::size_t gen;
    Expr q;
    std::map<Expr, Rational, ExprLess> product;
  };
  std::vector<Candidate> cands;
  std::set<std::pair<std::size_t, Expr>, CandidateLess> seen_cand;

  auto target_terms = term_map(target);
  std::set<Expr, ExprLess> monomials;
  std::vector<Expr> frontier;
  for (const auto& [m, c] : target_terms) {
    monomials.insert(m);
    frontier.push_back(m);
  }

  for (int round = 0; round <= rounds && !frontier.empty(); ++round) {
    std::vector<Expr> next;
    for (const auto& m : frontier) {
      for (std::size_t i = 0; i < generators.size(); ++i) {
        for (const auto& [u, cu] : gen_terms[i]) {
          auto q = monomial_quotient(m, u);
          if (!q || !seen_cand.insert({i, *q}).second) continue;
          if (cands.size() >= kMaxCandidates) continue;
          Candidate cd{i, *q, term_map(*q * generators[i])};
          for (const auto& [pm, pc] : cd.product)
            if (monomials.insert(pm).second) next.push_back(pm);
          cands.push_back(std::move(cd));
        }
      }
    }
    frontier = std::move(next);
  }
  if (cands.empty()) return std::nullopt;

  std::vector<Expr> rows(monomials.begin(), monomials.end());
  std::map<Expr, std::size_t, ExprLess> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
  RationalMatrix a(rows.size(), RationalRow(cands.size(), Rational(0)));
  std::vector<Rational> b(rows.size(), Rational(0));
  for (std::size_t j = 0; j < cands.size(); ++j)
    for (const auto& [m, c] : cands[j].product) a[row_of.at(m)][j] = c;
  for (const auto& [m, c] : target_terms) b[row_of.at(m)] = c;

  auto sol = solve_rational(a, b, cands.size());
  if (!sol) return std::nullopt;
  std::vector<std::vector<Expr>> parts(generators.size());
  for (std::size_t j = 0; j < cands.size(); ++j)
    if ((*sol)[j] != 0) parts[cands[j].gen].push_back(Expr((*sol)[j]) * cands[j].q);
  std::vector<Expr> out;
  for (auto& p : parts) out.push_back(make_add(std::move(p)));

  std::vector<Expr> check{target};
  for (std::size_t i = 0; i < generators.size(); ++i) check.push_back(-(out[i] * generators[i]));
  if (!make_add(std::move(check)).is_zero_literal()) return std::nullopt;
  return out;
}

std::pair<Expr, Expr> split_time_only(const Expr& e) {
  std::vector<Expr> time_only, rest;
  for (const auto& t : terms_of(e)) {
    bool pure = true;
    for (const auto& s : free_symbols(t)) {
      auto k = s.kind();
      if (k != SymbolKind::time && k != SymbolKind::parameter && k != SymbolKind::gauge_function_derivative) {
        pure = false;
        break;
      }
    }
    (pure ? time_only : rest).push_back(t);
  }
  return {make_add(std::move(time_only)), make_add(std::move(rest))};
}

}  // namespace noether

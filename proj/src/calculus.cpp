#include "noether/calculus.hpp"

#include <cmath>

namespace noether {

bool depends_on(const Expr& e, const Symbol& s) {
  if (!e.may_contain(s)) return false;
  if (e.is_symbol()) return e.symbol() == s;
  for (const auto& a : e.args())
    if (depends_on(a, s)) return true;
  return false;
}

namespace {

void collect_symbols(const Expr& e, std::set<Symbol>& out) {
  if (e.is_symbol()) {
    out.insert(e.symbol());
    return;
  }
  for (const auto& a : e.args()) collect_symbols(a, out);
}

}  // namespace

std::set<Symbol> free_symbols(const Expr& e) {
  std::set<Symbol> out;
  collect_symbols(e, out);
  return out;
}

bool depends_on_kind(const Expr& e, SymbolKind kind) {
  if (e.is_symbol()) return e.symbol().kind() == kind;
  for (const auto& a : e.args())
    if (depends_on_kind(a, kind)) return true;
  return false;
}

Expr diff(const Expr& e, const Symbol& s) {
  if (!e.may_contain(s)) return Expr(0);
  switch (e.kind()) {
    case NodeKind::number: return Expr(0);
    case NodeKind::symbol: return e.symbol() == s ? Expr(1) : Expr(0);
    case NodeKind::add: {
      std::vector<Expr> parts;
      for (const auto& t : e.args()) parts.push_back(diff(t, s));
      return make_add(std::move(parts));
    }
    case NodeKind::mul: {
      auto f = e.args();
      std::vector<Expr> parts;
      for (std::size_t i = 0; i < f.size(); ++i) {
        Expr d = diff(f[i], s);
        if (d.is_zero_literal()) continue;
        std::vector<Expr> prod(f.begin(), f.end());
        prod[i] = d;
        parts.push_back(make_mul(std::move(prod)));
      }
      return make_add(std::move(parts));
    }
    case NodeKind::pow: {
      Expr db = diff(e.base(), s);
      if (db.is_zero_literal()) return Expr(0);
      return make_mul({Expr(e.exponent()), make_pow(e.base(), e.exponent() - 1), db});
    }
    case NodeKind::func: {
      const Expr& a = e.args()[0];
      Expr da = diff(a, s);
      if (da.is_zero_literal()) return Expr(0);
      switch (e.func()) {
        case FuncKind::exp: return e * da;
        case FuncKind::log: return da / a;
        case FuncKind::sin: return cos(a) * da;
        case FuncKind::cos: return -(sin(a) * da);
      }
    }
  }
  return Expr(0);
}

Expr time_partial(const Expr& e) {
  std::vector<Expr> parts{diff(e, time_symbol())};
  for (const auto& s : free_symbols(e))
    if (s.kind() == SymbolKind::gauge_function_derivative)
      parts.push_back(Expr(next_gauge_derivative(s)) * diff(e, s));
  return make_add(std::move(parts));
}

namespace {

Expr substitute_impl(const Expr& e, const Bindings& b, std::uint64_t mask) {
  if ((e.symbol_mask() & mask) == 0) return e;
  switch (e.kind()) {
    case NodeKind::number: return e;
    case NodeKind::symbol: {
      auto it = b.find(e.symbol());
      return it == b.end() ? e : it->second;
    }
    case NodeKind::add: {
      std::vector<Expr> parts;
      for (const auto& t : e.args()) parts.push_back(substitute_impl(t, b, mask));
      return make_add(std::move(parts));
    }
    case NodeKind::mul: {
      std::vector<Expr> parts;
      for (const auto& t : e.args()) parts.push_back(substitute_impl(t, b, mask));
      return make_mul(std::move(parts));
    }
    case NodeKind::pow: return make_pow(substitute_impl(e.base(), b, mask), e.exponent());
    case NodeKind::func: return make_func(e.func(), substitute_impl(e.args()[0], b, mask));
  }
  return e;
}

void check_acyclic(const Bindings& b) {
  // Depth-first search on the graph "s -> bound symbols occurring in b[s]".
  std::map<Symbol, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::function<void(const Symbol&)> visit = [&](const Symbol& s) {
    int& st = state[s];
    if (st == 2) return;
    if (st == 1) throw SubstitutionCycle("cycle detected in bindings through '" + s.name() + "'");
    st = 1;
    for (const auto& t : free_symbols(b.at(s)))
      if (b.count(t) != 0) visit(t);
    state[s] = 2;
  };
  for (const auto& [s, _] : b) visit(s);
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  check_acyclic(bindings);
  std::uint64_t mask = 0;
  for (const auto& [s, _] : bindings) mask |= symbol_bit(s);
  return substitute_impl(e, bindings, mask);
}

double evaluate(const Expr& e, const Valuation& value_of) {
  switch (e.kind()) {
    case NodeKind::number: return e.number().get_d();
    case NodeKind::symbol: return value_of(e.symbol());
    case NodeKind::add: {
      double s = 0;
      for (const auto& t : e.args()) s += evaluate(t, value_of);
      return s;
    }
    case NodeKind::mul: {
      double p = 1;
      for (const auto& t : e.args()) p *= evaluate(t, value_of);
      return p;
    }
    case NodeKind::pow: {
      double b = evaluate(e.base(), value_of);
      const Rational& r = e.exponent();
      if (r.get_den() == 1) return std::pow(b, r.get_num().get_d());
      return std::pow(b, r.get_d());
    }
    case NodeKind::func: {
      double a = evaluate(e.args()[0], value_of);
      switch (e.func()) {
        case FuncKind::exp: return std::exp(a);
        case FuncKind::log: return std::log(a);
        case FuncKind::sin: return std::sin(a);
        case FuncKind::cos: return std::cos(a);
      }
    }
  }
  return 0;
}

}  // namespace noether

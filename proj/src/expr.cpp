#include "noether/expr.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace noether {

struct Expr::Node {
  NodeKind kind{};
  FuncKind fn{};
  Rational num;  // number value, or exponent of a pow node
  std::optional<Symbol> sym;
  std::vector<Expr> args;
  std::size_t hash = 0;
  std::uint64_t mask = 0;
  std::size_t size = 1;
};

std::string_view to_string(FuncKind f) {
  switch (f) {
    case FuncKind::exp: return "exp";
    case FuncKind::log: return "log";
    case FuncKind::sin: return "sin";
    case FuncKind::cos: return "cos";
  }
  return "?";
}

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_rational(const Rational& q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p())
    return mix(std::hash<long>{}(n.get_si()), std::hash<long>{}(d.get_si()));
  return std::hash<std::string>{}(q.get_str());
}

Expr number_node(const Rational& q) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = NodeKind::number;
  n->num = q;
  n->num.canonicalize();
  n->hash = mix(0x1234, hash_rational(n->num));
  return Expr(NodePtr(std::move(n)));
}

const Expr& zero_expr() {
  static const Expr z = number_node(Rational(0));
  return z;
}
const Expr& one_expr() {
  static const Expr o = number_node(Rational(1));
  return o;
}

Expr compound_node(NodeKind kind, std::vector<Expr> args, FuncKind fn = FuncKind::exp,
                   const Rational& num = Rational(0)) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = kind;
  n->fn = fn;
  n->num = num;
  std::size_t h = mix(static_cast<std::size_t>(kind) * 7919, static_cast<std::size_t>(fn));
  if (kind == NodeKind::pow) h = mix(h, hash_rational(num));
  for (const auto& a : args) {
    h = mix(h, a.hash());
    n->mask |= a.symbol_mask();
    n->size += a.size();
  }
  n->hash = h;
  n->args = std::move(args);
  return Expr(NodePtr(std::move(n)));
}

Expr raw_pow(const Expr& base, const Rational& e) { return compound_node(NodeKind::pow, {base}, FuncKind::exp, e); }

const Expr& base_of(const Expr& e) { return e.is_pow() ? e.base() : e; }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational int_pow(const Rational& q, long n) {
  if (n == 0) return Rational(1);
  if (q == 0) {
    if (n < 0) throw std::domain_error("division by zero");
    return Rational(0);
  }
  unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), k);
  Rational r(num, den);
  r.canonicalize();
  if (n < 0) r = 1 / r;
  return r;
}

// n^f for a positive integer n and non-integer rational f, written over
// the prime factors of n: 8^(1/2) -> 2*2^(1/2).
Expr int_base_fractional_pow(const mpz_class& n, const Rational& f) {
  if (n == 1) return one_expr();
  std::vector<std::pair<mpz_class, unsigned long>> primes;
  mpz_class rest = n;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 48) {
    for (mpz_class r = 2; r * r <= rest; ++r) {
      unsigned long a = 0;
      while (mpz_divisible_p(rest.get_mpz_t(), r.get_mpz_t())) {
        rest /= r;
        ++a;
      }
      if (a > 0) primes.emplace_back(r, a);
    }
  }
  if (rest != 1) primes.emplace_back(rest, 1);
  Rational c(1);
  std::vector<Expr> atoms;
  for (const auto& [r, a] : primes) {
    Rational total = f * Rational(static_cast<long>(a));
    total.canonicalize();
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), total.get_num_mpz_t(), total.get_den_mpz_t());
    if (!k.fits_slong_p()) throw std::overflow_error("exponent too large");
    c *= int_pow(Rational(r), k.get_si());
    Rational frac = total - Rational(k);
    frac.canonicalize();
    if (frac != 0) atoms.push_back(raw_pow(number_node(Rational(r)), frac));
  }
  if (atoms.empty()) return number_node(c);
  if (c == 1 && atoms.size() == 1) return atoms[0];
  std::vector<Expr> args;
  if (c != 1) args.push_back(number_node(c));
  args.insert(args.end(), atoms.begin(), atoms.end());
  return compound_node(NodeKind::mul, std::move(args));
}

Expr numeric_pow(const Rational& q, const Rational& e) {
  if (is_integer(e)) {
    if (!e.get_num().fits_slong_p()) throw std::overflow_error("exponent too large");
    return number_node(int_pow(q, e.get_num().get_si()));
  }
  if (q == 0) {
    if (e < 0) throw std::domain_error("division by zero");
    return zero_expr();
  }
  if (q < 0) return raw_pow(number_node(q), e);
  // Assembled by hand: make_mul would route these atoms back here.
  Rational c(1);
  std::vector<Expr> atoms;
  for (const Expr& part : {int_base_fractional_pow(q.get_num(), e), int_base_fractional_pow(q.get_den(), -e)}) {
    for (const Expr& f : part.is_mul() ? std::vector<Expr>(part.args().begin(), part.args().end())
                                       : std::vector<Expr>{part}) {
      if (f.is_number()) c *= f.number();
      else atoms.push_back(f);
    }
  }
  std::sort(atoms.begin(), atoms.end(), [](const Expr& x, const Expr& y) { return compare(x.base(), y.base()) < 0; });
  if (atoms.empty()) return number_node(c);
  if (c == 1 && atoms.size() == 1) return atoms[0];
  std::vector<Expr> args;
  if (c != 1) args.push_back(number_node(c));
  args.insert(args.end(), atoms.begin(), atoms.end());
  return compound_node(NodeKind::mul, std::move(args));
}

Expr distribute(const Expr& a, const Expr& b) {
  std::vector<Expr> out;
  auto ta = terms_of(a);
  auto tb = terms_of(b);
  out.reserve(ta.size() * tb.size());
  for (const auto& x : ta)
    for (const auto& y : tb) out.push_back(make_mul({x, y}));
  return make_add(std::move(out));
}

Expr scale_monomial(const Rational& c, const Expr& rest) {
  if (c == 0) return zero_expr();
  if (c == 1) return rest;
  if (rest.is_number()) return number_node(c * rest.number());
  std::vector<Expr> args{number_node(c)};
  if (rest.is_mul()) {
    args.insert(args.end(), rest.args().begin(), rest.args().end());
  } else {
    args.push_back(rest);
  }
  return compound_node(NodeKind::mul, std::move(args));
}

}  // namespace

Expr::Expr() : node_(zero_expr().node_) {}
Expr::Expr(int value) : Expr(Rational(value)) {}
Expr::Expr(long value) : Expr(Rational(value)) {}
Expr::Expr(const Rational& value) {
  if (value == 0) {
    node_ = zero_expr().node_;
  } else if (value == 1) {
    node_ = one_expr().node_;
  } else {
    node_ = number_node(value).node_;
  }
}
Expr::Expr(const Symbol& symbol) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::symbol;
  n->sym = symbol;
  n->hash = mix(0x5eed, std::hash<std::string>{}(symbol.name()));
  n->mask = symbol_bit(symbol);
  node_ = std::move(n);
}

NodeKind Expr::kind() const { return node_->kind; }
bool Expr::is_func(FuncKind f) const { return is_func() && node_->fn == f; }
bool Expr::is_zero_literal() const { return is_number() && node_->num == 0; }
bool Expr::is_one() const { return is_number() && node_->num == 1; }
const Rational& Expr::number() const {
  if (!is_number()) throw std::logic_error("Expr::number on non-number");
  return node_->num;
}
const Symbol& Expr::symbol() const {
  if (!is_symbol()) throw std::logic_error("Expr::symbol on non-symbol");
  return *node_->sym;
}
FuncKind Expr::func() const { return node_->fn; }
std::span<const Expr> Expr::args() const { return node_->args; }
const Expr& Expr::base() const {
  if (!is_pow()) throw std::logic_error("Expr::base on non-pow");
  return node_->args[0];
}
const Rational& Expr::exponent() const {
  if (!is_pow()) throw std::logic_error("Expr::exponent on non-pow");
  return node_->num;
}
std::size_t Expr::hash() const { return node_->hash; }
std::uint64_t Expr::symbol_mask() const { return node_->mask; }
bool Expr::may_contain(const Symbol& s) const { return (node_->mask & symbol_bit(s)) != 0; }
std::size_t Expr::size() const { return node_->size; }

std::uint64_t symbol_bit(const Symbol& s) {
  return std::uint64_t{1} << (std::hash<std::string>{}(s.name()) % 64);
}

bool operator==(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

int compare(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case NodeKind::number: {
      int c = cmp(a.number(), b.number());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case NodeKind::symbol: {
      int c = a.symbol().name().compare(b.symbol().name());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case NodeKind::pow: {
      if (int c = compare(a.base(), b.base()); c != 0) return c;
      int c = cmp(a.exponent(), b.exponent());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case NodeKind::func:
      if (a.func() != b.func()) return a.func() < b.func() ? -1 : 1;
      return compare(a.args()[0], b.args()[0]);
    case NodeKind::mul:
    case NodeKind::add: {
      auto x = a.args();
      auto y = b.args();
      std::size_t n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i)
        if (int c = compare(x[i], y[i]); c != 0) return c;
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.is_number()) return {term.number(), one_expr()};
  if (term.is_mul() && term.args()[0].is_number()) {
    auto args = term.args();
    if (args.size() == 2) return {args[0].number(), args[1]};
    return {args[0].number(), compound_node(NodeKind::mul, std::vector<Expr>(args.begin() + 1, args.end()))};
  }
  return {Rational(1), term};
}

std::vector<Expr> terms_of(const Expr& e) {
  if (e.is_zero_literal()) return {};
  if (e.is_add()) return {e.args().begin(), e.args().end()};
  return {e};
}

Expr make_add(std::vector<Expr> terms) {
  Rational constant(0);
  std::map<Expr, Rational, ExprLess> acc;
  std::function<void(const Expr&)> absorb = [&](const Expr& t) {
    if (t.is_number()) {
      constant += t.number();
    } else if (t.is_add()) {
      for (const auto& c : t.args()) absorb(c);
    } else {
      auto [c, rest] = split_coefficient(t);
      auto [it, inserted] = acc.try_emplace(rest, c);
      if (!inserted) it->second += c;
    }
  };
  for (const auto& t : terms) absorb(t);

  std::vector<Expr> out;
  if (constant != 0) out.push_back(number_node(constant));
  for (const auto& [rest, c] : acc)
    if (c != 0) out.push_back(scale_monomial(c, rest));
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out[0];
  return compound_node(NodeKind::add, std::move(out));
}

Expr make_mul(std::vector<Expr> factors) {
  Rational coeff(1);
  std::map<Expr, Rational, ExprLess> bases;
  std::vector<Expr> exp_args;
  std::function<void(const Expr&)> absorb = [&](const Expr& f) {
    switch (f.kind()) {
      case NodeKind::number: coeff *= f.number(); break;
      case NodeKind::mul:
        for (const auto& c : f.args()) absorb(c);
        break;
      case NodeKind::pow: {
        auto [it, inserted] = bases.try_emplace(f.base(), f.exponent());
        if (!inserted) it->second += f.exponent();
        break;
      }
      case NodeKind::func:
        if (f.func() == FuncKind::exp) {
          exp_args.push_back(f.args()[0]);
          break;
        }
        [[fallthrough]];
      default: {
        auto [it, inserted] = bases.try_emplace(f, Rational(1));
        if (!inserted) it->second += 1;
      }
    }
  };
  for (const auto& f : factors) absorb(f);
  if (coeff == 0) return zero_expr();

  std::vector<Expr> atoms;
  std::vector<Expr> sums;
  bool needs_rebuild = false;
  for (const auto& [b, e] : bases) {
    if (e == 0) continue;
    Expr p = make_pow(b, e);
    switch (p.kind()) {
      case NodeKind::number: coeff *= p.number(); break;
      case NodeKind::add: sums.push_back(p); break;
      case NodeKind::mul:
        needs_rebuild = true;
        atoms.push_back(p);
        break;
      default: atoms.push_back(p);
    }
  }
  if (coeff == 0) return zero_expr();
  if (!exp_args.empty()) {
    Expr ex = make_func(FuncKind::exp, make_add(exp_args));
    if (ex.is_number()) {
      coeff *= ex.number();
    } else {
      atoms.push_back(ex);
    }
  }
  if (needs_rebuild) {
    std::vector<Expr> all{number_node(coeff)};
    all.insert(all.end(), atoms.begin(), atoms.end());
    all.insert(all.end(), sums.begin(), sums.end());
    return make_mul(std::move(all));
  }

  std::sort(atoms.begin(), atoms.end(), [](const Expr& x, const Expr& y) {
    int c = compare(base_of(x), base_of(y));
    return c != 0 ? c < 0 : compare(x, y) < 0;
  });
  Expr product;
  if (atoms.empty()) {
    product = number_node(coeff);
  } else if (coeff == 1 && atoms.size() == 1) {
    product = atoms[0];
  } else {
    std::vector<Expr> args;
    if (coeff != 1) args.push_back(number_node(coeff));
    args.insert(args.end(), atoms.begin(), atoms.end());
    product = compound_node(NodeKind::mul, std::move(args));
  }
  for (const auto& s : sums) product = distribute(product, s);
  return product;
}

Expr make_pow(const Expr& b, const Rational& e_in) {
  Rational e = e_in;
  e.canonicalize();
  if (e == 0) return one_expr();
  if (e == 1) return b;
  switch (b.kind()) {
    case NodeKind::number: return numeric_pow(b.number(), e);
    case NodeKind::pow:
      if (is_integer(e) || !is_integer(b.exponent())) return make_pow(b.base(), b.exponent() * e);
      return raw_pow(b, e);
    case NodeKind::mul: {
      auto [c, rest] = split_coefficient(b);
      if (is_integer(e) || c > 0) {
        std::vector<Expr> parts;
        parts.push_back(make_pow(Expr(c), e));
        if (rest.is_mul()) {
          for (const auto& f : rest.args()) parts.push_back(make_pow(f, e));
        } else {
          parts.push_back(make_pow(rest, e));
        }
        return make_mul(std::move(parts));
      }
      return raw_pow(b, e);
    }
    case NodeKind::add: {
      if (is_integer(e) && e > 0) {
        if (!e.get_num().fits_slong_p()) throw std::overflow_error("exponent too large");
        long n = e.get_num().get_si();
        Expr r = b;
        for (long i = 1; i < n; ++i) r = distribute(r, b);
        return r;
      }
      if (is_integer(e)) {
        auto [lead, _] = split_coefficient(b.args()[0].is_number() && b.args().size() > 1 ? b.args()[1] : b.args()[0]);
        if (lead < 0) {
          Expr neg = make_mul({Expr(-1), b});
          Rational sign = (e.get_num() % 2 == 0) ? Rational(1) : Rational(-1);
          return make_mul({Expr(sign), raw_pow(neg, e)});
        }
      }
      return raw_pow(b, e);
    }
    case NodeKind::func:
      if (b.func() == FuncKind::exp) return make_func(FuncKind::exp, make_mul({Expr(e), b.args()[0]}));
      if (b.func() == FuncKind::cos && is_integer(e) && e >= 2) {
        long n = e.get_num().get_si();
        Expr s = make_func(FuncKind::sin, b.args()[0]);
        Expr one_minus = make_add({Expr(1), make_mul({Expr(-1), make_pow(s, 2)})});
        Expr r = make_pow(one_minus, n / 2);
        if (n % 2 == 1) r = make_mul({b, r});
        return r;
      }
      return raw_pow(b, e);
    case NodeKind::symbol: return raw_pow(b, e);
  }
  return raw_pow(b, e);
}

Expr make_func(FuncKind f, const Expr& a) {
  switch (f) {
    case FuncKind::exp:
      if (a.is_zero_literal()) return one_expr();
      break;
    case FuncKind::log:
      if (a.is_one()) return zero_expr();
      if (a.is_func(FuncKind::exp)) return a.args()[0];
      if (a.is_number() && a.number() <= 0) throw std::domain_error("log of non-positive number");
      break;
    case FuncKind::sin:
      if (a.is_zero_literal()) return zero_expr();
      break;
    case FuncKind::cos:
      if (a.is_zero_literal()) return one_expr();
      break;
  }
  return compound_node(NodeKind::func, {a}, f);
}

Expr operator+(const Expr& a, const Expr& b) { return make_add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return make_add({a, make_mul({Expr(-1), b})}); }
Expr operator-(const Expr& a) { return make_mul({Expr(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return make_mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero_literal()) throw std::domain_error("division by zero");
  return make_mul({a, make_pow(b, -1)});
}
Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr pow(const Expr& base, const Rational& exponent) { return make_pow(base, exponent); }
Expr pow(const Expr& base, int exponent) { return make_pow(base, Rational(exponent)); }
Expr exp(const Expr& a) { return make_func(FuncKind::exp, a); }
Expr log(const Expr& a) { return make_func(FuncKind::log, a); }
Expr sin(const Expr& a) { return make_func(FuncKind::sin, a); }
Expr cos(const Expr& a) { return make_func(FuncKind::cos, a); }
Expr sqrt(const Expr& a) { return make_pow(a, Rational(1, 2)); }

// ---------------------------------------------------------------------------
// Printing. The output re-parses to a structurally identical expression.

namespace {

enum Prec { kSum = 1, kProduct = 2, kPower = 3, kAtom = 4 };

void print(std::ostream& os, const Expr& e, int ctx);

void print_rational(std::ostream& os, const Rational& q, int ctx) {
  bool simple = q >= 0 && is_integer(q);
  bool paren = !simple && ctx >= kPower;
  if (paren) os << '(';
  os << q.get_str();
  if (paren) os << ')';
}

bool is_atomic(const Expr& e) {
  return e.is_symbol() || e.is_func() || (e.is_number() && e.number() >= 0 && is_integer(e.number()));
}

void print_power_body(std::ostream& os, const Expr& base, const Rational& exponent) {
  if (is_atomic(base)) {
    print(os, base, kAtom);
  } else {
    os << '(';
    print(os, base, 0);
    os << ')';
  }
  if (exponent == 1) return;
  os << '^';
  if (exponent > 0 && is_integer(exponent)) {
    os << exponent.get_str();
  } else {
    os << '(' << exponent.get_str() << ')';
  }
}

// Product printed as [-][coeff*]num1*num2/den1/den2.
void print_product(std::ostream& os, const Rational& coeff_in, std::span<const Expr> factors, int ctx) {
  Rational coeff = coeff_in;
  bool paren = ctx >= kPower;
  if (paren) os << '(';
  if (coeff < 0) {
    os << '-';
    coeff = -coeff;
  }
  std::vector<const Expr*> num;
  std::vector<const Expr*> den;
  // X^-k with k > 1 stays an explicit power: 1/X^k would expand X^k on re-parse.
  auto as_denominator = [](const Expr& f) {
    return f.is_pow() && f.exponent() < 0 && (f.exponent() == -1 || f.base().is_symbol());
  };
  for (const auto& f : factors) {
    if (as_denominator(f)) {
      den.push_back(&f);
    } else {
      num.push_back(&f);
    }
  }
  bool first = true;
  if (coeff != 1 || num.empty()) {
    os << coeff.get_str();
    first = false;
  }
  for (const Expr* f : num) {
    if (!first) os << '*';
    first = false;
    if (f->is_pow() && f->exponent() < 0) {
      print_power_body(os, f->base(), f->exponent());
    } else {
      print(os, *f, kProduct);
    }
  }
  for (const Expr* f : den) {
    os << '/';
    print_power_body(os, f->base(), -f->exponent());
  }
  if (paren) os << ')';
}

void print(std::ostream& os, const Expr& e, int ctx) {
  switch (e.kind()) {
    case NodeKind::number: print_rational(os, e.number(), ctx); return;
    case NodeKind::symbol: os << e.symbol().name(); return;
    case NodeKind::func:
      os << to_string(e.func()) << '(';
      print(os, e.args()[0], 0);
      os << ')';
      return;
    case NodeKind::pow:
      if (e.exponent() < 0 && (e.exponent() == -1 || e.base().is_symbol())) {
        print_product(os, Rational(1), std::span<const Expr>(&e, 1), ctx);
      } else {
        print_power_body(os, e.base(), e.exponent());
      }
      return;
    case NodeKind::mul: {
      auto args = e.args();
      Rational c(1);
      if (args[0].is_number()) {
        c = args[0].number();
        args = args.subspan(1);
      }
      print_product(os, c, args, ctx);
      return;
    }
    case NodeKind::add: {
      bool paren = ctx >= kProduct;
      if (paren) os << '(';
      bool first = true;
      for (const auto& t : e.args()) {
        auto [c, rest] = split_coefficient(t);
        if (first) {
          print(os, t, kSum);
        } else if (c < 0) {
          os << " - ";
          print(os, scale_monomial(-c, rest), kSum);
        } else {
          os << " + ";
          print(os, t, kSum);
        }
        first = false;
      }
      if (paren) os << ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e, 0);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << to_string(e); }

}  // namespace noether

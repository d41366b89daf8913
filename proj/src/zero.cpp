#include "noether/zero.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>

#include "noether/calculus.hpp"

namespace noether {

namespace {

std::mutex g_probe_mutex;
ProbeSettings g_probe;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void collect_denominators(const Expr& e, std::map<Expr, Rational, ExprLess>& den) {
  if (e.is_pow() && e.exponent() < 0 && e.base().is_add()) {
    Rational need = -e.exponent();
    auto [it, inserted] = den.try_emplace(e.base(), need);
    if (!inserted && it->second < need) it->second = need;
    return;
  }
  if (e.is_add() || e.is_mul())
    for (const auto& a : e.args()) collect_denominators(a, den);
}

}  // namespace

void set_probe_settings(const ProbeSettings& settings) {
  std::lock_guard lock(g_probe_mutex);
  g_probe = settings;
}

ProbeSettings probe_settings() {
  std::lock_guard lock(g_probe_mutex);
  return g_probe;
}

double probe_value(const Symbol& s, int point, std::uint64_t seed, int attempt) {
  std::uint64_t h = splitmix64(seed ^ std::hash<std::string>{}(s.name()));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(point) * 0x100000001b3ULL));
  h = splitmix64(h ^ static_cast<std::uint64_t>(attempt));
  double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  return 0.3 + 1.4 * u;
}

bool numerically_zero(const Expr& e, int points, std::uint64_t seed) {
  if (e.is_zero_literal()) return true;
  auto terms = terms_of(e);
  for (int k = 0; k < points; ++k) {
    bool done = false;
    for (int attempt = 0; attempt < 8 && !done; ++attempt) {
      Valuation v = [&](const Symbol& s) { return probe_value(s, k, seed, attempt); };
      double total = 0;
      double scale = 0;
      bool finite = true;
      for (const auto& t : terms) {
        double x = evaluate(t, v);
        if (!std::isfinite(x)) {
          finite = false;
          break;
        }
        total += x;
        scale += std::fabs(x);
      }
      if (!finite) continue;
      done = true;
      if (std::fabs(total) > 1e-9 * scale) return false;
    }
    if (!done) throw ProbeError("numeric probe could not find a finite sample for " + to_string(e));
  }
  return true;
}

Expr clear_denominators(const Expr& e) {
  Expr cur = e;
  for (int round = 0; round < 4; ++round) {
    std::map<Expr, Rational, ExprLess> den;
    collect_denominators(cur, den);
    if (den.empty()) return cur;
    // Term by term, so each denominator meets its own base before the
    // multiplier is distributed.
    std::vector<Expr> terms;
    for (const auto& t : terms_of(cur)) {
      std::vector<Expr> factors{t};
      for (const auto& [b, k] : den) factors.push_back(make_pow(b, k));
      terms.push_back(make_mul(std::move(factors)));
    }
    cur = make_add(std::move(terms));
  }
  return cur;
}

bool is_zero(const Expr& e) { return is_zero(e, probe_settings()); }

bool is_zero(const Expr& e, const ProbeSettings& settings) {
  if (e.is_zero_literal()) return true;
  bool symbolic = clear_denominators(e).is_zero_literal();
  if (!settings.enabled) return symbolic;
  bool numeric = numerically_zero(e, settings.points, settings.seed);
  if (symbolic != numeric) {
    throw InternalError(std::string("zero test disagreement (symbolic ") + (symbolic ? "zero" : "nonzero") +
                        ", numeric " + (numeric ? "zero" : "nonzero") + ") for " + to_string(e));
  }
  return symbolic;
}

}  // namespace noether

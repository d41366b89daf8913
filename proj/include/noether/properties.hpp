#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "noether/noether.hpp"

namespace noether {

/// Outcome of a randomized identity suite.
struct PropertyResult {
  PropertyResult() = default;
  explicit PropertyResult(std::string n) : name(std::move(n)) {}

  std::string name;
  int instances = 0;
  int failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && instances > 0; }
  void record(bool pass, const std::string& what);
};

/// Random expression over `syms` of depth at most `depth`, using every node
/// kind and function of the grammar.
Expr random_expr(const std::vector<Symbol>& syms, std::mt19937_64& rng, int depth);

/// Rebuilds e bottom-up through the smart constructors.
Expr rebuild(const Expr& e);

PropertyResult parse_round_trip(std::uint64_t seed, int n = 200);
PropertyResult canonical_idempotence(std::uint64_t seed, int n = 200);

PropertyResult k_three_forms(const Analysis& an, std::uint64_t seed, int n = 10);
PropertyResult gamma_k(const Analysis& an, std::uint64_t seed, int n = 10);
PropertyResult gamlam(const Analysis& an);
PropertyResult primlag(const Analysis& an);
PropertyResult poisson_identities(const Analysis& an, std::uint64_t seed, int n = 10);
PropertyResult lie_identities(const Analysis& an, std::uint64_t seed, int n = 10);
PropertyResult reduce_certificates(const Analysis& an, std::uint64_t seed, int n = 10);

/// Theorem 2: vanishing of delta^L K - K delta^H on the family q, p, q^2/2,
/// q p agrees with vanishing on random h.
PropertyResult generating_family(const Analysis& an, const std::vector<GeneratorCandidate>& gs, std::uint64_t seed,
                                 int n = 10);
/// Theorem 3: the K.G identities, on passing and failing candidates alike.
PropertyResult theorem3(const Analysis& an, const std::vector<GeneratorCandidate>& gs, std::uint64_t seed);

}  // namespace noether

#pragma once

#include <cstdint>
#include <stdexcept>

#include "noether/expr.hpp"

namespace noether {

/// Numeric cross-check of the symbolic zero test. Symbol values are drawn
/// uniformly from [0.3, 1.7], deterministically from (seed, point, name).
struct ProbeSettings {
  bool enabled = true;
  int points = 20;
  std::uint64_t seed = 20240611;
};

// Process-wide; set before any analysis starts.
void set_probe_settings(const ProbeSettings& settings);
ProbeSettings probe_settings();

class ProbeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symbolic and numeric zero tests disagreed: the rewrite table is missing
/// an identity the expression relies on.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Multiplies through by every sum raised to a negative power so rational
/// functions cancel in the expanded numerator.
Expr clear_denominators(const Expr& e);

/// Zero-equivalence: canonical form (after clearing denominators) is the
/// literal zero. Runs the numeric probe when enabled.
bool is_zero(const Expr& e);
bool is_zero(const Expr& e, const ProbeSettings& settings);

double probe_value(const Symbol& s, int point, std::uint64_t seed, int attempt = 0);

/// True when |e| is negligible relative to its term magnitudes at every
/// probe point. Throws ProbeError when no finite sample can be obtained.
bool numerically_zero(const Expr& e, int points, std::uint64_t seed);

}  // namespace noether

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noether/constraints.hpp"
#include "noether/evolution.hpp"
#include "noether/legendre.hpp"
#include "noether/system_model.hpp"

namespace noether {

struct AnalysisOptions {
  int max_stabilization_depth = 10;
  int ansatz_degree = 4;
};

/// Everything derived from a Lagrangian before any generator is examined.
struct Analysis {
  SystemModel sys;
  LegendreMap map;
  Stabilization stabilization;
  ConstraintSet primaries{Side::hamiltonian};   // phi_mu
  ConstraintSet lagrangian_chain{Side::lagrangian};
  ConstraintSet plc{Side::lagrangian};          // chi_mu = K . phi_mu
  ExprVector chi_from_alpha;                    // alpha . gamma_mu
  Accelerations accelerations;
  VectorField xh, xl, xl0;
  bool chi_restricts_configuration = false;
  AnalysisOptions options;
  std::vector<std::string> warnings;

  const ConstraintSet& hamiltonian_chain() const { return stabilization.chain; }
};

Analysis analyze_system(SystemModel sys, const std::optional<Expr>& hamiltonian,
                        const std::optional<ExprVector>& primary, const AnalysisOptions& options = {});

}  // namespace noether

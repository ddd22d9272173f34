#pragma once

#include <string>
#include <vector>

#include "bohmslit/config.hpp"

namespace bohmslit {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0;      // measured quantity
  double threshold = 0;  // what it was compared against
  std::string detail;
};

/// End-to-end invariant suite behind `validate`: total-momentum identity,
/// finite-difference gradients, commutator order, normalization,
/// centre-of-mass law, anti-diagonal invariance, mirror equivariance,
/// constrained symmetry and sampler/quadrature agreement. Sizes are kept
/// small enough for an interactive run.
std::vector<CheckResult> run_validation_suite(const RunConfig& cfg);

}  // namespace bohmslit

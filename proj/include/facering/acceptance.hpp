#pragma once

// The ten-point acceptance suite over the standard generator corpus:
// quotient dimensions, canonical-function well-definedness and oracle
// equivalence, characteristic-2 certification, move invariance, the exact
// identity/differential-operator/degree experiments, Lefschetz ranks for
// 2-spheres, and the algebra-layer property checks. Shared by the acceptance
// test binary and the CLI's corpus runner.

#include <string>
#include <vector>

#include "facering/complex.hpp"

namespace facering {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// The generator corpus: simplex boundaries, cross-polytopes, cyclic 3-sphere
// boundaries, and ten seeded stacked spheres.
std::vector<SimplicialComplex> acceptance_corpus();

std::vector<CriterionResult> run_acceptance_suite();

std::string acceptance_to_json_text(const std::vector<CriterionResult>& results);

}  // namespace facering

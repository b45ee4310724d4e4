#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecp/local_bernstein.hpp"
#include "ecp/space.hpp"
#include "ecp/suitability.hpp"
#include "ecp/transitions.hpp"

namespace ecp {

struct AnalysisOptions {
  double tol_scale = 1.0;
  bool trace = false;
};

/// Full suitability analysis of one space: transition functions, the
/// exact-vanishing check, the local Bernstein conversion and the coefficient
/// recursion, stopping at the first stage that fails.
struct Analysis {
  bool suitable = false;
  int m = 0;
  int k = 0;
  std::optional<TransitionSet> transitions;
  std::optional<IndependenceReport> independence;
  /// Coefficient tensors retained by the recursion.
  std::vector<CoeffTensor> levels;
  int steps_run = 0;
  std::optional<SuitabilityFailure> failure;
  std::vector<std::string> warnings;
};

Analysis analyze(const SplineSpace& space, const AnalysisOptions& options = {});

}  // namespace ecp

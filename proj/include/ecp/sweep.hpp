#pragma once

#include <vector>

#include "ecp/pipeline.hpp"
#include "ecp/spec_file.hpp"

namespace ecp {

struct SweepRow {
  double value = 0.0;
  bool suitable = false;
};

/// Verdicts at steps+1 equispaced values from sweep.from to sweep.to.
std::vector<SweepRow> run_sweep(const SpecFile& spec, const AnalysisOptions& options = {});

/// Number of verdict changes along consecutive rows.
int count_flips(const std::vector<SweepRow>& rows);

struct FlipSearch {
  bool found = false;
  /// Final bracket; verdicts differ at its ends.
  double lower = 0.0;
  double upper = 0.0;
  bool lower_suitable = false;
  int iterations = 0;
  /// Every value evaluated, in evaluation order.
  std::vector<SweepRow> tested;

  double midpoint() const { return 0.5 * (lower + upper); }
};

/// Bisects the swept entry between `lo` and `hi` (whose verdicts must
/// differ) for at most `max_iterations` halvings or until the bracket is
/// narrower than `tol`.
FlipSearch bisect_flip(const SpecFile& spec, double lo, double hi, int max_iterations, double tol,
                       const AnalysisOptions& options = {});

bool suitable_at(const SpecFile& spec, double value, const AnalysisOptions& options = {});

}  // namespace ecp

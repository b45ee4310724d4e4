#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecp/local_bernstein.hpp"

namespace ecp {

/// Why a space was rejected. Only monotonicity and zero_normalizer come from
/// the coefficient recursion; the others stop the pipeline earlier.
enum class FailureKind {
  monotonicity,
  zero_normalizer,
  singular_system,
  dependent_transitions,
  singular_change_of_basis,
};

std::string_view to_string(FailureKind kind);

/// Forensics of the first violation, in loop order level, interval,
/// function, coefficient. Level j is the step number (j = 1 tests the
/// coefficients of f_{l,m}); function l and coefficient h are 1-based;
/// the interval index is 0-based (I_0 .. I_k). Fields that do not apply to a
/// kind are empty.
struct SuitabilityFailure {
  FailureKind kind = FailureKind::monotonicity;
  std::optional<int> level;
  std::optional<int> interval;
  std::optional<int> function;
  std::optional<int> coefficient;
  std::optional<double> difference;
  std::string message;
};

struct StepResult {
  bool passed = true;
  double tolerance = 0.0;
  std::optional<SuitabilityFailure> failure;
};

struct SfdOptions {
  /// Multiplies the monotonicity tolerance 1e-10 * max(1, max|b|).
  double tol_scale = 1.0;
  /// Keep every intermediate tensor, not only the final one.
  bool trace = false;
};

/// One step of the recursion, from level n to level n-1.
///
/// Differences d[r][h] = b[r][h+1] - b[r][h] (r >= 2) must be >= -tol; the
/// suffix sums t[l][h] = sum_{r > l} d[r][h] normalized by t[1][h] give the
/// coefficients at the next level. `step` is the 1-based step number used
/// in the failure record.
std::pair<StepResult, CoeffTensor> sfd_step(const CoeffTensor& tensor, int step,
                                            const SfdOptions& options = {});

struct SuitabilityReport {
  bool verdict = false;
  int steps_run = 0;
  /// All levels with options.trace, otherwise only the last one reached.
  std::vector<CoeffTensor> levels;
  std::optional<SuitabilityFailure> failure;
};

/// Runs the recursion from level m down to level 1, stopping at the first
/// violation.
SuitabilityReport sfd_test(const CoeffTensor& tensor, const SfdOptions& options = {});

}  // namespace ecp

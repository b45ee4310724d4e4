#include "ecp/suitability.hpp"

#include <algorithm>
#include <sstream>

#include "ecp/error.hpp"

namespace ecp {

std::string_view to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::monotonicity: return "monotonicity";
    case FailureKind::zero_normalizer: return "zero_normalizer";
    case FailureKind::singular_system: return "singular_system";
    case FailureKind::dependent_transitions: return "dependent_transitions";
    case FailureKind::singular_change_of_basis: return "singular_change_of_basis";
  }
  return "unknown";
}

std::pair<StepResult, CoeffTensor> sfd_step(const CoeffTensor& b, int step,
                                            const SfdOptions& options) {
  const int n = b.level();
  if (n < 2) throw Error(ErrorCode::SizeMismatch, "a recursion step needs level >= 2");
  const int pieces = b.intervals();

  StepResult result;
  result.tolerance = 1e-10 * options.tol_scale * std::max(1.0, b.max_abs());
  CoeffTensor next(n - 1, pieces);

  std::vector<double> d(static_cast<std::size_t>(n) * (n - 1));
  auto diff = [&](int r, int h) -> double& { return d[static_cast<std::size_t>(r) * (n - 1) + h]; };

  for (int i = 0; i < pieces; ++i) {
    for (int r = 1; r < n; ++r)
      for (int h = 0; h + 1 < n; ++h) {
        diff(r, h) = b(r, h + 1, i) - b(r, h, i);
        if (diff(r, h) < -result.tolerance) {
          std::ostringstream msg;
          msg << "Bernstein coefficients of f_" << r + 1 << "," << n << " decrease on interval "
              << i << " between indices " << h + 1 << " and " << h + 2 << " (difference "
              << diff(r, h) << ")";
          result.passed = false;
          result.failure =
              SuitabilityFailure{FailureKind::monotonicity, step, i, r + 1, h + 1, diff(r, h),
                                 msg.str()};
          return {result, next};
        }
      }
    // Suffix sums t[l][h] accumulated in place from the top: row r-1 of d
    // becomes sum_{s >= r} d[s][h], i.e. t[r-1][h] in 1-based terms.
    for (int r = n - 2; r >= 1; --r)
      for (int h = 0; h + 1 < n; ++h) diff(r, h) += diff(r + 1, h);
    for (int h = 0; h + 1 < n; ++h) {
      const double normalizer = diff(1, h);
      if (!(normalizer > result.tolerance)) {
        std::ostringstream msg;
        msg << "weight coefficient " << h + 1 << " vanishes on interval " << i << " (value "
            << normalizer << ")";
        result.passed = false;
        result.failure = SuitabilityFailure{FailureKind::zero_normalizer, step, i, 1, h + 1,
                                            normalizer, msg.str()};
        return {result, next};
      }
      next(0, h, i) = 1.0;
      for (int l = 1; l + 1 < n; ++l) next(l, h, i) = diff(l + 1, h) / normalizer;
    }
  }
  return {result, next};
}

SuitabilityReport sfd_test(const CoeffTensor& tensor, const SfdOptions& options) {
  SuitabilityReport report;
  CoeffTensor current = tensor;
  if (options.trace) report.levels.push_back(current);
  for (int step = 1; current.level() >= 2; ++step) {
    auto [res, next] = sfd_step(current, step, options);
    report.steps_run = step;
    if (!res.passed) {
      report.verdict = false;
      report.failure = std::move(res.failure);
      if (!options.trace) report.levels.push_back(std::move(current));
      return report;
    }
    current = std::move(next);
    if (options.trace) report.levels.push_back(current);
  }
  report.verdict = true;
  if (!options.trace) report.levels.push_back(std::move(current));
  return report;
}

}  // namespace ecp

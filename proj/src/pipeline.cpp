#include "ecp/pipeline.hpp"

#include <sstream>

#include "ecp/error.hpp"

namespace ecp {

Analysis analyze(const SplineSpace& space, const AnalysisOptions& options) {
  Analysis out;
  out.m = space.dim();
  out.k = space.knot_count();
  out.warnings = space.warnings();

  try {
    out.transitions = compute_transitions(space);
  } catch (const SingularSystemError& e) {
    SuitabilityFailure f;
    f.kind = FailureKind::singular_system;
    f.function = e.ell();
    f.message = e.what();
    out.failure = std::move(f);
    return out;
  }

  out.independence = check_independence(space, *out.transitions);
  if (!out.independence->independent) {
    std::ostringstream msg;
    msg << "f_" << out.independence->ell << "," << out.m << " vanishes too often at "
        << (out.independence->endpoint == Endpoint::a ? "a" : "b")
        << "; the transition functions are linearly dependent";
    SuitabilityFailure f;
    f.kind = FailureKind::dependent_transitions;
    f.function = out.independence->ell;
    f.difference = out.independence->value;
    f.message = msg.str();
    out.failure = std::move(f);
    return out;
  }

  CoeffTensor tensor;
  try {
    tensor = to_bernstein_coeffs(space, *out.transitions);
  } catch (const Error& e) {
    // A singular local Hermite problem means the section's derivative space
    // is degenerate on its interval: no local Bernstein basis.
    SuitabilityFailure f;
    f.kind = FailureKind::singular_change_of_basis;
    f.message = e.what();
    out.failure = std::move(f);
    return out;
  }

  SuitabilityReport rep = sfd_test(tensor, {options.tol_scale, options.trace});
  out.suitable = rep.verdict;
  out.steps_run = rep.steps_run;
  out.levels = std::move(rep.levels);
  out.failure = std::move(rep.failure);
  return out;
}

}  // namespace ecp

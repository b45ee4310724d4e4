#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ecp/space.hpp"

namespace ecp {

/// The assembled Hermite system A b = c for one transition function.
///
/// Unknowns are the section-basis coefficients of the pieces, interval by
/// interval. Row layout: the l-1 homogeneous conditions at a, then one block
/// row of m conditions per interior knot (R_i A_{i-1}(x_i) | -A_i(x_i)),
/// then the m-l+1 conditions at b. The rhs is 1 on the value condition at b.
struct BlockSystem {
  int ell = 0;  // transition index, 2..m
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
};

/// ell is 1-based as in f_{ell,m}; valid range 2..m.
BlockSystem assemble_system(const SplineSpace& space, int ell);

enum class BasisTag { section, local_bernstein };

/// Transition functions f_{1,n}, ..., f_{n,n} relative to [a, b].
///
/// coeffs[i] is n x n; row l-1 holds the coefficients of the i-th piece of
/// f_{l,n} in the tagged basis of interval i.
struct TransitionSet {
  int level = 0;
  BasisTag basis = BasisTag::section;
  std::vector<Eigen::MatrixXd> coeffs;
  /// Reciprocal condition estimate of each solve, index l-2.
  std::vector<double> rcond;

  /// Largest absolute coefficient, the scale used by residual checks.
  double scale() const;
};

/// Solves the block system for every l = 2..m; f_{1,m} is the constant 1.
/// Throws SingularSystemError when a system has no unique solution (the
/// space is then not an ECP-space).
TransitionSet compute_transitions(const SplineSpace& space);

/// D^order f_{ell,m}(x^side), evaluated from section-basis coefficients.
double eval_transition(const SplineSpace& space, const TransitionSet& ts, int ell, int order,
                       double x, Side side);

enum class Endpoint { a, b };

/// Result of the exact-vanishing check: D^{l-1} f_l(a) != 0 and
/// D^{m-l+1}(1 - f_l)(b) != 0 for l = 2..m.
struct IndependenceReport {
  bool independent = true;
  int ell = 0;  // first failing transition index
  Endpoint endpoint = Endpoint::a;
  double value = 0.0;
  double threshold = 0.0;
  /// Checked values, index l-2.
  std::vector<double> left_values;
  std::vector<double> right_values;
};

/// Threshold is 1e-9 * max(1, ts.scale()).
IndependenceReport check_independence(const SplineSpace& space, const TransitionSet& ts);

}  // namespace ecp

#include "ecp/transitions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dense_solve.hpp"
#include "ecp/error.hpp"

namespace ecp {

BlockSystem assemble_system(const SplineSpace& space, int ell) {
  const int m = space.dim();
  if (ell < 2 || ell > m)
    throw Error(ErrorCode::SizeMismatch, "transition index must lie in 2..m");
  const int pieces = space.interval_count();
  const int n = pieces * m;
  const auto& x = space.breakpoints();

  BlockSystem sys;
  sys.ell = ell;
  sys.matrix = Eigen::MatrixXd::Zero(n, n);
  sys.rhs = Eigen::VectorXd::Zero(n);

  int row = 0;
  if (ell > 1) {
    sys.matrix.block(row, 0, ell - 1, m) = space.section(0).collocation(ell - 1, x.front());
    row += ell - 1;
  }
  for (int i = 1; i < pieces; ++i) {
    const Eigen::MatrixXd left = space.section(i - 1).collocation(m, x[i]);
    const Eigen::MatrixXd right = space.section(i).collocation(m, x[i]);
    sys.matrix.block(row, (i - 1) * m, m, m) = space.connections()[i - 1].entries() * left;
    sys.matrix.block(row, i * m, m, m) = -right;
    row += m;
  }
  const int tail = m - ell + 1;
  sys.matrix.block(row, (pieces - 1) * m, tail, m) =
      space.section(pieces - 1).collocation(tail, x.back());
  sys.rhs[row] = 1.0;
  return sys;
}

double TransitionSet::scale() const {
  double s = 0.0;
  for (const auto& c : coeffs) s = std::max(s, c.cwiseAbs().maxCoeff());
  return s;
}

TransitionSet compute_transitions(const SplineSpace& space) {
  const int m = space.dim();
  const int pieces = space.interval_count();
  TransitionSet ts;
  ts.level = m;
  ts.basis = BasisTag::section;
  ts.coeffs.assign(pieces, Eigen::MatrixXd::Zero(m, m));
  for (auto& c : ts.coeffs) c(0, 0) = 1.0;

  for (int ell = 2; ell <= m; ++ell) {
    const BlockSystem sys = assemble_system(space, ell);
    const detail::EquilibratedLU lu(sys.matrix);
    ts.rcond.push_back(lu.rcond());
    if (lu.singular()) {
      std::ostringstream msg;
      msg << "Hermite system for f_" << ell << "," << m
          << " has no unique solution (rcond=" << lu.rcond()
          << "); the space is not an ECP-space";
      throw SingularSystemError(ell, lu.rcond(), msg.str());
    }
    const Eigen::VectorXd sol = lu.solve(sys.rhs);
    if (!sol.allFinite())
      throw SingularSystemError(ell, lu.rcond(), "Hermite solve produced non-finite values");
    for (int i = 0; i < pieces; ++i) ts.coeffs[i].row(ell - 1) = sol.segment(i * m, m).transpose();
  }
  return ts;
}

double eval_transition(const SplineSpace& space, const TransitionSet& ts, int ell, int order,
                       double x, Side side) {
  const int i = space.locate(x, side);
  return space.section(i).combine(ts.coeffs[i].row(ell - 1).transpose(), order, x);
}

IndependenceReport check_independence(const SplineSpace& space, const TransitionSet& ts) {
  const int m = space.dim();
  IndependenceReport rep;
  rep.threshold = 1e-9 * std::max(1.0, ts.scale());
  for (int ell = 2; ell <= m; ++ell) {
    const double left = eval_transition(space, ts, ell, ell - 1, space.a(), Side::plus);
    const double right = -eval_transition(space, ts, ell, m - ell + 1, space.b(), Side::minus);
    rep.left_values.push_back(left);
    rep.right_values.push_back(right);
    if (!rep.independent) continue;
    const bool bad_left = !(std::abs(left) > rep.threshold);
    const bool bad_right = !(std::abs(right) > rep.threshold);
    if (bad_left || bad_right) {
      rep.independent = false;
      rep.ell = ell;
      rep.endpoint = bad_left ? Endpoint::a : Endpoint::b;
      rep.value = bad_left ? left : right;
    }
  }
  return rep;
}

}  // namespace ecp

#include "ecp/design_basis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecp/error.hpp"

namespace ecp {

DesignBasis::DesignBasis(SplineSpace space, const TransitionSet& ts) : space_(std::move(space)) {
  const int m = space_.dim();
  if (ts.level != m || static_cast<int>(ts.coeffs.size()) != space_.interval_count())
    throw Error(ErrorCode::SizeMismatch, "transition set does not match the space");
  for (const auto& c : ts.coeffs) {
    Eigen::MatrixXd b = c;
    for (int l = 0; l + 1 < m; ++l) b.row(l) -= c.row(l + 1);
    coeffs_.push_back(std::move(b));
  }
}

Eigen::VectorXd DesignBasis::eval(double t, Side side, int order) const {
  const double slack = 1e-12 * std::max({1.0, std::abs(space_.a()), std::abs(space_.b())});
  if (!(t >= space_.a() - slack && t <= space_.b() + slack)) {
    std::ostringstream msg;
    msg << "t=" << t << " outside [" << space_.a() << ", " << space_.b() << "]";
    throw Error(ErrorCode::OutOfInterval, msg.str());
  }
  const int i = space_.locate(t, side);
  return coeffs_[i] * space_.section(i).eval(order, t);
}

DesignBasis bernstein_basis(const SplineSpace& space, const TransitionSet& ts) {
  return DesignBasis(space, ts);
}

Eigen::VectorXd eval_curve(const DesignBasis& basis, const ControlPolygon& polygon, double t,
                           Side side) {
  if (polygon.size() != basis.dim())
    throw Error(ErrorCode::SizeMismatch, "control polygon has " + std::to_string(polygon.size()) +
                                             " points, the space has dimension " +
                                             std::to_string(basis.dim()));
  return polygon.points.transpose() * basis.eval(t, side);
}

BasisTable sample_basis(const DesignBasis& basis, int points_per_interval) {
  BasisTable table;
  table.grid = interval_grid(basis.space(), points_per_interval);
  table.values.resize(static_cast<Eigen::Index>(table.grid.size()), basis.dim());
  for (std::size_t p = 0; p < table.grid.size(); ++p)
    table.values.row(static_cast<Eigen::Index>(p)) =
        basis.eval(table.grid[p].x, table.grid[p].side).transpose();
  return table;
}

CurveSample sample_curve(const DesignBasis& basis, const ControlPolygon& polygon,
                         int points_per_interval) {
  if (polygon.size() != basis.dim())
    throw Error(ErrorCode::SizeMismatch, "control polygon size does not match the space");
  const BasisTable table = sample_basis(basis, points_per_interval);
  return {table.grid, table.values * polygon.points};
}

}  // namespace ecp

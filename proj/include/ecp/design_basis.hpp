#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ecp/space.hpp"
#include "ecp/transitions.hpp"
#include "ecp/weights.hpp"

namespace ecp {

/// The normalized basis B_l = f_l - f_{l+1} (l < m), B_m = f_m of a spline
/// space, stored as per-interval section-basis coefficients. It is the
/// optimal normalized totally positive basis whenever the space is suitable
/// for design; it is built regardless of the verdict.
class DesignBasis {
 public:
  DesignBasis(SplineSpace space, const TransitionSet& ts);

  int dim() const { return space_.dim(); }
  const SplineSpace& space() const { return space_; }
  /// Row l-1 of coeffs(i) is B_l on interval i.
  const Eigen::MatrixXd& coeffs(int interval) const { return coeffs_.at(interval); }

  /// D^order B_l(t^side), l = 1..m. Throws OutOfInterval outside [a, b].
  Eigen::VectorXd eval(double t, Side side, int order = 0) const;

 private:
  SplineSpace space_;
  std::vector<Eigen::MatrixXd> coeffs_;
};

DesignBasis bernstein_basis(const SplineSpace& space, const TransitionSet& ts);

/// m control points in R^d, one per row.
struct ControlPolygon {
  Eigen::MatrixXd points;

  int size() const { return static_cast<int>(points.rows()); }
  int dimension() const { return static_cast<int>(points.cols()); }
};

/// sum_l P_l B_l(t). Throws SizeMismatch or OutOfInterval.
Eigen::VectorXd eval_curve(const DesignBasis& basis, const ControlPolygon& polygon, double t,
                           Side side);

struct BasisTable {
  std::vector<GridPoint> grid;
  /// One row per grid point, column l-1 is B_l.
  Eigen::MatrixXd values;
};

BasisTable sample_basis(const DesignBasis& basis, int points_per_interval);

struct CurveSample {
  std::vector<GridPoint> grid;
  Eigen::MatrixXd points;  // one row per grid point
};

/// Curve points on the per-interval grid (both one-sided values at knots).
CurveSample sample_curve(const DesignBasis& basis, const ControlPolygon& polygon,
                         int points_per_interval);

}  // namespace ecp

#pragma once

#include <Eigen/Dense>

namespace ecp::detail {

/// Reciprocal condition below which a system is treated as singular.
inline constexpr double kSingularRcond = 1e-12;

/// LU with partial pivoting on the row/column equilibrated matrix. Columns
/// mix generators of very different magnitude (cosh at x = 15 next to the
/// constant), so the condition estimate is taken after scaling.
class EquilibratedLU {
 public:
  explicit EquilibratedLU(const Eigen::MatrixXd& a) {
    const auto n = a.rows();
    row_scale_ = Eigen::VectorXd::Ones(n);
    col_scale_ = Eigen::VectorXd::Ones(a.cols());
    for (Eigen::Index r = 0; r < n; ++r) {
      const double s = a.row(r).cwiseAbs().maxCoeff();
      if (s > 0.0) row_scale_[r] = 1.0 / s;
    }
    Eigen::MatrixXd scaled = row_scale_.asDiagonal() * a;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      const double s = scaled.col(c).cwiseAbs().maxCoeff();
      if (s > 0.0) col_scale_[c] = 1.0 / s;
    }
    scaled = scaled * col_scale_.asDiagonal();
    lu_.compute(scaled);
    rcond_ = lu_.rcond();
    if (!(rcond_ == rcond_)) rcond_ = 0.0;
  }

  double rcond() const { return rcond_; }
  bool singular() const { return !(rcond_ >= kSingularRcond); }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd y = lu_.solve(row_scale_.asDiagonal() * rhs);
    return col_scale_.asDiagonal() * y;
  }

 private:
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  Eigen::VectorXd row_scale_;
  Eigen::VectorXd col_scale_;
  double rcond_ = 0.0;
};

}  // namespace ecp::detail

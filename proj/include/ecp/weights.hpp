#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ecp/space.hpp"
#include "ecp/transitions.hpp"

namespace ecp {

/// Transition functions of every generalized-derivative level at one point,
/// propagated as truncated Taylor series.
///
/// Level 0 holds D^r f_{l,m}(x) from the section-basis coefficients. Level j
/// is built from level j-1 by
///   w_j = sum_{l>=2} D f_{l,m-j+1},  f_{l,m-j} = (sum_{h>l} D f_{h,m-j+1}) / w_j,
/// with derivatives carried exactly through the quotient (series division).
class DerivTower {
 public:
  /// Builds levels 0..max_level (clamped to m-1). Construction stops early at
  /// the first w_j with |w_j| <= 1e-13 * local scale, or, when
  /// stop_at_nonpositive is set, at the first w_j <= 0.
  DerivTower(const SplineSpace& space, const TransitionSet& ts, double x, Side side,
             int max_level = -1, bool stop_at_nonpositive = false);

  double x() const { return x_; }
  Side side() const { return side_; }
  int interval() const { return interval_; }
  int dim() const { return m_; }

  /// Highest level whose transition functions were formed.
  int levels_built() const { return static_cast<int>(series_.size()) - 1; }
  /// Highest j for which w_j was evaluated (may exceed levels_built() by one
  /// when the tower stopped on that weight).
  int weights_evaluated() const { return static_cast<int>(weights_.size()) - 1; }
  /// Level at which the tower stopped on a vanishing weight, if any.
  std::optional<int> stopped_at() const { return stopped_at_; }

  /// w_j for j = 0..weights_evaluated(); w_0 = 1.
  double weight(int j) const { return weights_.at(j); }
  /// D^r f_{ell, m-level}(x), ell 1-based, r = 0..m-level-1.
  double derivative(int level, int ell, int r) const;
  double value(int level, int ell) const { return derivative(level, ell, 0); }
  /// D^r w_j(x) for r = 0..m-j-1.
  double weight_derivative(int j, int r) const;

 private:
  double x_;
  Side side_;
  int interval_;
  int m_;
  // series_[j] is (m-j) x (m-j): row l-1, column r = D^r f_{l,m-j} / r!.
  std::vector<Eigen::MatrixXd> series_;
  std::vector<Eigen::VectorXd> weight_series_;
  std::vector<double> weights_;
  std::optional<int> stopped_at_;
};

struct LevelValues {
  std::vector<double> f;  // f_{l,m-j}, l = 1..m-j
  double w = 0.0;         // w_j
};

/// Throws NearZeroWeightError when some w_{j'}, j' <= j, vanishes at x.
LevelValues eval_level(const SplineSpace& space, const TransitionSet& ts, int j, double x,
                       Side side);

struct GridPoint {
  double x;
  Side side;
  int interval;
};

/// `per_interval` equispaced points on every [x_i, x_{i+1}], both ends
/// included as x_i^+ and x_{i+1}^-.
std::vector<GridPoint> interval_grid(const SplineSpace& space, int per_interval);

struct WeightSample {
  int level = 0;
  std::vector<GridPoint> grid;
  /// NaN where the weight could not be formed (an earlier weight vanished).
  std::vector<double> values;
};

/// Samples w_1..w_{m-1}.
std::vector<WeightSample> sample_weights(const SplineSpace& space, const TransitionSet& ts,
                                         int per_interval);

struct OracleVerdict {
  bool positive = true;
  /// Global argmin over all levels and grid points.
  int level = 0;
  int interval = 0;
  double x = 0.0;
  Side side = Side::plus;
  double value = 0.0;
  /// Per-level minimum and the threshold 1e-9 * max grid |w_j|, index j-1.
  std::vector<double> level_min;
  std::vector<double> level_threshold;
};

/// Positive iff every w_j exceeds its threshold at every grid point. At a
/// point where some w_j <= 0, higher levels are not evaluated.
OracleVerdict positivity_scan(const SplineSpace& space, const TransitionSet& ts,
                              int per_interval);

/// Canonical basis psi_1 = 1, psi_{r+1} = sum_{l>r} C(l-2, r-1) f_{l,m}.
struct CanonicalBasis {
  /// Row r-1 holds psi_r over the f-basis (column l-1 is the weight of f_l).
  Eigen::MatrixXd over_f;
  /// Per interval, row r-1 holds psi_r in the section basis.
  std::vector<Eigen::MatrixXd> section_coeffs;
};

CanonicalBasis canonical_coeffs(const TransitionSet& ts);

/// psi_{r+1}(x) from the nested-integral form
///   int_a^x w_1 int_a^{xi_1} w_2 ... int_a^{xi_{r-1}} w_r,
/// by composite 16-point Gauss-Legendre (one panel per knot interval).
double canonical_by_quadrature(const SplineSpace& space, const TransitionSet& ts, int r, double x);

/// 16-point Gauss-Legendre nodes and weights on [-1, 1].
const std::vector<std::pair<double, double>>& gauss_legendre_16();

}  // namespace ecp

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ecp/space.hpp"
#include "ecp/transitions.hpp"

namespace ecp {

/// Bernstein basis of one section space on its own interval.
///
/// Row l-1 of g_coeffs holds the local transition function g_l in the section
/// basis; row l-1 of b_coeffs holds B_l = g_l - g_{l+1} (g_{n+1} = 0).
struct LocalBasis {
  int interval = 0;
  int level = 0;
  Eigen::MatrixXd g_coeffs;
  Eigen::MatrixXd b_coeffs;
  /// Largest endpoint-vanishing residual of the B_l, relative to the
  /// coefficient scale.
  double endpoint_residual = 0.0;
};

/// Solves the single-interval Hermite problems for the section.
/// Throws SingularSystemError when the span is degenerate on its interval.
LocalBasis local_transitions(const SectionSpace& section, int interval_index = 0);

/// Per-interval Bernstein coefficients b[l][h][i] of the transition functions
/// at one recursion level. Indices are 0-based: (l, h, i) stands for the
/// coefficient of B_{h+1} in the i-th piece of f_{l+1}.
class CoeffTensor {
 public:
  CoeffTensor() = default;
  CoeffTensor(int level, int intervals)
      : level_(level), intervals_(intervals),
        data_(static_cast<std::size_t>(level) * level * intervals, 0.0) {}

  int level() const { return level_; }
  int intervals() const { return intervals_; }

  double& operator()(int l, int h, int i) { return data_[index(l, h, i)]; }
  double operator()(int l, int h, int i) const { return data_[index(l, h, i)]; }

  double max_abs() const;
  bool all_finite() const;

  friend bool operator==(const CoeffTensor&, const CoeffTensor&) = default;

 private:
  std::size_t index(int l, int h, int i) const {
    return (static_cast<std::size_t>(i) * level_ + l) * level_ + h;
  }

  int level_ = 0;
  int intervals_ = 0;
  std::vector<double> data_;
};

/// Expresses each piece of each f_{l,m} in the local Bernstein basis of its
/// interval. Throws Error(SingularChangeOfBasis) for a degenerate family.
CoeffTensor to_bernstein_coeffs(const SplineSpace& space, const TransitionSet& ts,
                                std::span<const LocalBasis> bases);

/// Same, computing the local bases on the fly.
CoeffTensor to_bernstein_coeffs(const SplineSpace& space, const TransitionSet& ts);

std::vector<LocalBasis> local_bases(const SplineSpace& space);

}  // namespace ecp

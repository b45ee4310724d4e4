#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ecp/section_space.hpp"

namespace ecp {

/// One-sided evaluation at a knot: `plus` is the right limit x^+ (belongs to
/// the interval starting at x), `minus` the left limit x^-.
enum class Side { plus, minus };

inline char side_char(Side s) { return s == Side::plus ? '+' : '-'; }

/// Lower-triangular matrix with positive diagonal and unit first row and
/// column, linking left and right derivative vectors at a knot.
class ConnectionMatrix {
 public:
  /// Throws DimensionMismatch, NotLowerTriangular, NonPositiveDiagonal or
  /// BadFirstRowOrColumn.
  static ConnectionMatrix validate(const Eigen::MatrixXd& entries);
  static ConnectionMatrix identity(int order);

  int order() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  friend bool operator==(const ConnectionMatrix& a, const ConnectionMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  explicit ConnectionMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {}
  Eigen::MatrixXd entries_;
};

/// The spline space with knots of zero multiplicity on [a, b].
///
/// Breakpoints are x_0 = a < x_1 < ... < x_k < x_{k+1} = b; section i lives on
/// [x_i, x_{i+1}] and connections()[i-1] is the matrix R_i acting at x_i.
class SplineSpace {
 public:
  double a() const { return breaks_.front(); }
  double b() const { return breaks_.back(); }
  int dim() const { return sections_.front().dim(); }
  int knot_count() const { return static_cast<int>(breaks_.size()) - 2; }
  int interval_count() const { return static_cast<int>(sections_.size()); }

  const std::vector<double>& breakpoints() const { return breaks_; }
  std::vector<double> knots() const { return {breaks_.begin() + 1, breaks_.end() - 1}; }
  const std::vector<SectionSpace>& sections() const { return sections_; }
  const SectionSpace& section(int i) const { return sections_.at(i); }
  const std::vector<ConnectionMatrix>& connections() const { return connections_; }
  /// Non-fatal diagnostics gathered while building (critical lengths).
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Interval index owning (x, side): x_i^+ belongs to interval i, x_i^- to
  /// interval i-1; a is always interval 0 and b the last interval.
  int locate(double x, Side side) const;

  friend bool operator==(const SplineSpace&, const SplineSpace&) = default;

 private:
  friend SplineSpace build_space(std::pair<double, double>, std::vector<double>,
                                 std::vector<SectionSpace>, std::vector<ConnectionMatrix>);
  SplineSpace() = default;

  std::vector<double> breaks_;
  std::vector<SectionSpace> sections_;
  std::vector<ConnectionMatrix> connections_;
  std::vector<std::string> warnings_;
};

/// Validates counts, knot ordering, section dimensions and intervals.
/// Throws CountMismatch, KnotsNotIncreasing, DimensionMismatch,
/// IntervalMismatch or DegenerateInterval.
SplineSpace build_space(std::pair<double, double> interval, std::vector<double> knots,
                        std::vector<SectionSpace> sections,
                        std::vector<ConnectionMatrix> connections);

/// Convenience form: section i is built from token list i on [x_i, x_{i+1}];
/// a single token list is replicated on every interval.
SplineSpace build_space(std::pair<double, double> interval, std::vector<double> knots,
                        const std::vector<std::vector<std::string>>& section_tokens,
                        std::vector<ConnectionMatrix> connections);

}  // namespace ecp

#include "ecp/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ecp/error.hpp"

namespace ecp {

ConnectionMatrix ConnectionMatrix::validate(const Eigen::MatrixXd& entries) {
  const auto m = entries.rows();
  if (m < 1 || entries.cols() != m)
    throw Error(ErrorCode::DimensionMismatch, "connection matrix must be square of order >= 1");
  if (!entries.allFinite())
    throw Error(ErrorCode::DimensionMismatch, "connection matrix has non-finite entries");
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = r + 1; c < m; ++c)
      if (entries(r, c) != 0.0) {
        std::ostringstream msg;
        msg << "connection matrix entry (" << r << "," << c << ") = " << entries(r, c)
            << " lies above the diagonal";
        throw Error(ErrorCode::NotLowerTriangular, msg.str());
      }
  for (Eigen::Index r = 0; r < m; ++r)
    if (!(entries(r, r) > 0.0)) {
      std::ostringstream msg;
      msg << "connection matrix diagonal entry " << r << " = " << entries(r, r)
          << " is not positive";
      throw Error(ErrorCode::NonPositiveDiagonal, msg.str());
    }
  if (entries(0, 0) != 1.0)
    throw Error(ErrorCode::BadFirstRowOrColumn, "connection matrix entry (0,0) must be 1");
  for (Eigen::Index r = 1; r < m; ++r)
    if (entries(r, 0) != 0.0)
      throw Error(ErrorCode::BadFirstRowOrColumn,
                  "first column of a connection matrix must be (1,0,...,0)");
  return ConnectionMatrix(entries);
}

ConnectionMatrix ConnectionMatrix::identity(int order) {
  return ConnectionMatrix(Eigen::MatrixXd::Identity(order, order));
}

int SplineSpace::locate(double x, Side side) const {
  const int last = interval_count() - 1;
  // First breakpoint strictly greater than x (plus) or >= x (minus).
  const auto it = side == Side::plus ? std::upper_bound(breaks_.begin(), breaks_.end(), x)
                                     : std::lower_bound(breaks_.begin(), breaks_.end(), x);
  const int i = static_cast<int>(it - breaks_.begin()) - 1;
  return std::clamp(i, 0, last);
}

SplineSpace build_space(std::pair<double, double> interval, std::vector<double> knots,
                        std::vector<SectionSpace> sections,
                        std::vector<ConnectionMatrix> connections) {
  const auto [a, b] = interval;
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw Error(ErrorCode::DegenerateInterval, "spline interval needs a < b");
  const std::size_t k = knots.size();
  if (sections.size() != k + 1) {
    std::ostringstream msg;
    msg << k << " knots need " << k + 1 << " sections, got " << sections.size();
    throw Error(ErrorCode::CountMismatch, msg.str());
  }
  if (connections.size() != k) {
    std::ostringstream msg;
    msg << k << " knots need " << k << " connection matrices, got " << connections.size();
    throw Error(ErrorCode::CountMismatch, msg.str());
  }

  std::vector<double> breaks;
  breaks.reserve(k + 2);
  breaks.push_back(a);
  breaks.insert(breaks.end(), knots.begin(), knots.end());
  breaks.push_back(b);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1])) {
      std::ostringstream msg;
      msg << "breakpoints must increase strictly: x_" << i << "=" << breaks[i] << ", x_" << i + 1
          << "=" << breaks[i + 1];
      throw Error(ErrorCode::KnotsNotIncreasing, msg.str());
    }

  const int m = sections.front().dim();
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (sections[i].dim() != m)
      throw Error(ErrorCode::DimensionMismatch,
                  "section " + std::to_string(i) + " has dimension " +
                      std::to_string(sections[i].dim()) + ", expected " + std::to_string(m));
    if (sections[i].lo() != breaks[i] || sections[i].hi() != breaks[i + 1])
      throw Error(ErrorCode::IntervalMismatch,
                  "section " + std::to_string(i) + " does not live on [x_" + std::to_string(i) +
                      ", x_" + std::to_string(i + 1) + "]");
  }
  for (std::size_t i = 0; i < connections.size(); ++i)
    if (connections[i].order() != m)
      throw Error(ErrorCode::DimensionMismatch,
                  "connection matrix R_" + std::to_string(i + 1) + " has order " +
                      std::to_string(connections[i].order()) + ", expected " + std::to_string(m));

  SplineSpace space;
  space.breaks_ = std::move(breaks);
  space.sections_ = std::move(sections);
  space.connections_ = std::move(connections);
  for (std::size_t i = 0; i < space.sections_.size(); ++i)
    if (auto w = critical_length_warning(space.sections_[i]))
      space.warnings_.push_back("interval " + std::to_string(i) + ": " + *w);
  return space;
}

SplineSpace build_space(std::pair<double, double> interval, std::vector<double> knots,
                        const std::vector<std::vector<std::string>>& section_tokens,
                        std::vector<ConnectionMatrix> connections) {
  if (section_tokens.empty())
    throw Error(ErrorCode::CountMismatch, "at least one section is required");
  std::vector<double> breaks{interval.first};
  breaks.insert(breaks.end(), knots.begin(), knots.end());
  breaks.push_back(interval.second);
  const std::size_t pieces = knots.size() + 1;
  if (section_tokens.size() != 1 && section_tokens.size() != pieces) {
    std::ostringstream msg;
    msg << knots.size() << " knots need " << pieces << " sections (or one to replicate), got "
        << section_tokens.size();
    throw Error(ErrorCode::CountMismatch, msg.str());
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (!(breaks[i] < breaks[i + 1])) {
      std::ostringstream msg;
      msg << "breakpoints must increase strictly: x_" << i << "=" << breaks[i] << ", x_" << i + 1
          << "=" << breaks[i + 1];
      throw Error(ErrorCode::KnotsNotIncreasing, msg.str());
    }
  std::vector<SectionSpace> sections;
  sections.reserve(pieces);
  for (std::size_t i = 0; i < pieces; ++i) {
    const auto& tokens = section_tokens.size() == 1 ? section_tokens.front() : section_tokens[i];
    sections.push_back(SectionSpace::from_strings(tokens, breaks[i], breaks[i + 1]));
  }
  return build_space(interval, std::move(knots), std::move(sections), std::move(connections));
}

}  // namespace ecp

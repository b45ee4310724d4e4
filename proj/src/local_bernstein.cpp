#include "ecp/local_bernstein.hpp"

#include <algorithm>
#include <cmath>

#include "dense_solve.hpp"
#include "ecp/error.hpp"

namespace ecp {

LocalBasis local_transitions(const SectionSpace& section, int interval_index) {
  const int n = section.dim();
  const SplineSpace single =
      build_space({section.lo(), section.hi()}, {}, std::vector<SectionSpace>{section}, {});
  const TransitionSet g = compute_transitions(single);

  LocalBasis basis;
  basis.interval = interval_index;
  basis.level = n;
  basis.g_coeffs = g.coeffs.front();
  basis.b_coeffs = basis.g_coeffs;
  for (int l = 0; l + 1 < n; ++l) basis.b_coeffs.row(l) -= basis.g_coeffs.row(l + 1);

  // B_l vanishes l-1 times at lo and n-l times at hi.
  const double scale = std::max(1.0, basis.b_coeffs.cwiseAbs().maxCoeff());
  double worst = 0.0;
  for (int l = 1; l <= n; ++l) {
    const Eigen::VectorXd c = basis.b_coeffs.row(l - 1).transpose();
    for (int r = 0; r < l - 1; ++r)
      worst = std::max(worst, std::abs(section.combine(c, r, section.lo())));
    for (int r = 0; r < n - l; ++r)
      worst = std::max(worst, std::abs(section.combine(c, r, section.hi())));
  }
  basis.endpoint_residual = worst / scale;
  return basis;
}

std::vector<LocalBasis> local_bases(const SplineSpace& space) {
  std::vector<LocalBasis> out;
  out.reserve(space.interval_count());
  for (int i = 0; i < space.interval_count(); ++i)
    out.push_back(local_transitions(space.section(i), i));
  return out;
}

double CoeffTensor::max_abs() const {
  double s = 0.0;
  for (double v : data_) s = std::max(s, std::abs(v));
  return s;
}

bool CoeffTensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

CoeffTensor to_bernstein_coeffs(const SplineSpace& space, const TransitionSet& ts,
                                std::span<const LocalBasis> bases) {
  const int n = ts.level;
  const int pieces = space.interval_count();
  if (static_cast<int>(bases.size()) != pieces)
    throw Error(ErrorCode::CountMismatch, "one local basis per interval is required");

  CoeffTensor tensor(n, pieces);
  for (int i = 0; i < pieces; ++i) {
    // Column h of G is B_{h+1} in the section basis.
    const Eigen::MatrixXd g = bases[i].b_coeffs.transpose();
    const detail::EquilibratedLU lu(g);
    if (lu.singular())
      throw Error(ErrorCode::SingularChangeOfBasis,
                  "local Bernstein family of interval " + std::to_string(i) + " is degenerate");
    for (int l = 0; l < n; ++l) {
      const Eigen::VectorXd b = lu.solve(ts.coeffs[i].row(l).transpose());
      for (int h = 0; h < n; ++h) tensor(l, h, i) = b[h];
    }
  }
  if (!tensor.all_finite())
    throw Error(ErrorCode::SingularChangeOfBasis, "Bernstein coefficients are not finite");
  return tensor;
}

CoeffTensor to_bernstein_coeffs(const SplineSpace& space, const TransitionSet& ts) {
  const auto bases = local_bases(space);
  return to_bernstein_coeffs(space, ts, bases);
}

}  // namespace ecp

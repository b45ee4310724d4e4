#include "ecp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ecp/error.hpp"

namespace ecp {
namespace {

constexpr double kDivTolerance = 1e-13;

double factorial(int r) {
  double f = 1.0;
  for (int q = 2; q <= r; ++q) f *= q;
  return f;
}

// Taylor coefficients of a / b, both truncated to the same length.
Eigen::VectorXd series_divide(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const auto n = a.size();
  Eigen::VectorXd c(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double acc = a[k];
    for (Eigen::Index q = 1; q <= k; ++q) acc -= b[q] * c[k - q];
    c[k] = acc / b[0];
  }
  return c;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int q = 1; q <= k; ++q) c = c * (n - k + q) / q;
  return c;
}

}  // namespace

DerivTower::DerivTower(const SplineSpace& space, const TransitionSet& ts, double x, Side side,
                       int max_level, bool stop_at_nonpositive)
    : x_(x), side_(side), interval_(space.locate(x, side)), m_(space.dim()) {
  if (max_level < 0 || max_level > m_ - 1) max_level = m_ - 1;
  const SectionSpace& section = space.section(interval_);

  Eigen::MatrixXd basis_taylor(m_, m_);  // column r: D^r u_h / r!
  for (int r = 0; r < m_; ++r) basis_taylor.col(r) = section.eval(r, x) / factorial(r);
  series_.push_back(ts.coeffs[interval_] * basis_taylor);
  weights_.push_back(1.0);
  weight_series_.push_back(Eigen::VectorXd::Ones(1));

  for (int j = 1; j <= max_level; ++j) {
    const Eigen::MatrixXd& prev = series_.back();
    const int n = static_cast<int>(prev.rows());  // m - j + 1
    const int len = n - 1;                        // series length at level j
    Eigen::MatrixXd deriv(n, len);
    for (int r = 0; r < len; ++r) deriv.col(r) = prev.col(r + 1) * double(r + 1);

    Eigen::VectorXd w = deriv.bottomRows(n - 1).colwise().sum().transpose();
    const double scale = deriv.col(0).bottomRows(n - 1).cwiseAbs().sum();
    weights_.push_back(w[0]);
    weight_series_.push_back(w);
    const bool vanishing = !(std::abs(w[0]) > kDivTolerance * scale) || scale == 0.0;
    if (vanishing || (stop_at_nonpositive && !(w[0] > 0.0))) {
      if (vanishing) stopped_at_ = j;
      break;
    }

    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(n - 1, len);
    next(0, 0) = 1.0;
    Eigen::VectorXd suffix = Eigen::VectorXd::Zero(len);
    for (int l = n - 2; l >= 1; --l) {
      suffix += deriv.row(l + 1).transpose();
      next.row(l) = series_divide(suffix, w).transpose();
    }
    series_.push_back(std::move(next));
  }
}

double DerivTower::derivative(int level, int ell, int r) const {
  return series_.at(level)(ell - 1, r) * factorial(r);
}

double DerivTower::weight_derivative(int j, int r) const {
  return weight_series_.at(j)[r] * factorial(r);
}

LevelValues eval_level(const SplineSpace& space, const TransitionSet& ts, int j, double x,
                       Side side) {
  const int m = space.dim();
  if (j < 1 || j > m - 1) throw Error(ErrorCode::SizeMismatch, "level must lie in 1..m-1");
  const DerivTower tower(space, ts, x, side, j);
  if (tower.levels_built() < j) {
    const int bad = *tower.stopped_at();
    throw NearZeroWeightError(bad, x, tower.weight(bad));
  }
  LevelValues out;
  out.w = tower.weight(j);
  for (int l = 1; l <= m - j; ++l) out.f.push_back(tower.value(j, l));
  return out;
}

std::vector<GridPoint> interval_grid(const SplineSpace& space, int per_interval) {
  if (per_interval < 2) throw Error(ErrorCode::SizeMismatch, "grid needs >= 2 points per interval");
  const auto& br = space.breakpoints();
  std::vector<GridPoint> grid;
  grid.reserve(static_cast<std::size_t>(per_interval) * space.interval_count());
  for (int i = 0; i < space.interval_count(); ++i) {
    const double lo = br[i];
    const double hi = br[i + 1];
    for (int p = 0; p < per_interval; ++p) {
      const bool last = p == per_interval - 1;
      const double x = last ? hi : lo + (hi - lo) * p / (per_interval - 1);
      grid.push_back({x, last ? Side::minus : Side::plus, i});
    }
  }
  return grid;
}

std::vector<WeightSample> sample_weights(const SplineSpace& space, const TransitionSet& ts,
                                         int per_interval) {
  const int m = space.dim();
  const auto grid = interval_grid(space, per_interval);
  std::vector<WeightSample> out(std::max(0, m - 1));
  for (int j = 1; j < m; ++j) {
    out[j - 1].level = j;
    out[j - 1].grid = grid;
    out[j - 1].values.assign(grid.size(), std::numeric_limits<double>::quiet_NaN());
  }
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const DerivTower tower(space, ts, grid[p].x, grid[p].side);
    for (int j = 1; j <= tower.weights_evaluated(); ++j) out[j - 1].values[p] = tower.weight(j);
  }
  return out;
}

OracleVerdict positivity_scan(const SplineSpace& space, const TransitionSet& ts,
                              int per_interval) {
  const int m = space.dim();
  const auto grid = interval_grid(space, per_interval);
  OracleVerdict v;
  if (m < 2) return v;
  v.level_min.assign(m - 1, std::numeric_limits<double>::infinity());
  v.level_threshold.assign(m - 1, 0.0);
  std::vector<double> level_max(m - 1, 0.0);
  v.value = std::numeric_limits<double>::infinity();

  for (const auto& g : grid) {
    const DerivTower tower(space, ts, g.x, g.side, -1, /*stop_at_nonpositive=*/true);
    for (int j = 1; j <= tower.weights_evaluated(); ++j) {
      const double w = tower.weight(j);
      level_max[j - 1] = std::max(level_max[j - 1], std::abs(w));
      if (w < v.level_min[j - 1]) v.level_min[j - 1] = w;
      if (w < v.value) {
        v.value = w;
        v.level = j;
        v.interval = g.interval;
        v.x = g.x;
        v.side = g.side;
      }
    }
  }
  for (int j = 1; j < m; ++j) {
    v.level_threshold[j - 1] = 1e-9 * level_max[j - 1];
    if (!(v.level_min[j - 1] > v.level_threshold[j - 1])) v.positive = false;
  }
  return v;
}

CanonicalBasis canonical_coeffs(const TransitionSet& ts) {
  const int m = ts.level;
  CanonicalBasis cb;
  cb.over_f = Eigen::MatrixXd::Zero(m, m);
  cb.over_f(0, 0) = 1.0;
  for (int r = 1; r < m; ++r)
    for (int l = r + 1; l <= m; ++l) cb.over_f(r, l - 1) = binomial(l - 2, r - 1);
  for (const auto& c : ts.coeffs) cb.section_coeffs.push_back(cb.over_f * c);
  return cb;
}

const std::vector<std::pair<double, double>>& gauss_legendre_16() {
  static const std::vector<std::pair<double, double>> rule = [] {
    constexpr int n = 16;
    std::vector<std::pair<double, double>> out;
    for (int k = 1; k <= n; ++k) {
      double t = std::cos(std::numbers::pi * (k - 0.25) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int q = 2; q <= n; ++q) {
          const double p2 = ((2.0 * q - 1.0) * t * p1 - (q - 1.0) * p0) / q;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double step = p1 / dp;
        t -= step;
        if (std::abs(step) < 1e-16) break;
      }
      out.emplace_back(t, 2.0 / ((1.0 - t * t) * dp * dp));
    }
    return out;
  }();
  return rule;
}

namespace {

// int_a^x w_q(xi) * nested(q+1)(xi) dxi; the innermost factor is 1.
double nested_integral(const SplineSpace& space, const TransitionSet& ts, int q, int r, double x) {
  if (q > r) return 1.0;
  const auto& br = space.breakpoints();
  const auto& rule = gauss_legendre_16();
  double total = 0.0;
  for (int i = 0; i < space.interval_count() && br[i] < x; ++i) {
    const double lo = br[i];
    const double hi = std::min(br[i + 1], x);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (const auto& [node, weight] : rule) {
      const double xi = mid + half * node;
      const DerivTower tower(space, ts, xi, Side::plus, q);
      if (tower.weights_evaluated() < q) continue;
      total += weight * half * tower.weight(q) * nested_integral(space, ts, q + 1, r, xi);
    }
  }
  return total;
}

}  // namespace

double canonical_by_quadrature(const SplineSpace& space, const TransitionSet& ts, int r, double x) {
  if (r == 0) return 1.0;
  return nested_integral(space, ts, 1, r, x);
}

}  // namespace ecp

#include <gtest/gtest.h>

#include "ecp/design_basis.hpp"
#include "ecp/error.hpp"
#include "ecp/pipeline.hpp"
#include "ecp/transitions.hpp"
#include "support.hpp"

using namespace ecp;

namespace {

DesignBasis basis_of(const SplineSpace& s) { return bernstein_basis(s, compute_transitions(s)); }

// Distance from p to segment [a, b].
double segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d d = b - a;
  const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

double max_distance_to_polygon(const CurveSample& c, const Eigen::MatrixXd& poly) {
  double worst = 0.0;
  for (Eigen::Index p = 0; p < c.points.rows(); ++p) {
    const Eigen::Vector2d q = c.points.row(p).transpose();
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index s = 0; s + 1 < poly.rows(); ++s)
      best = std::min(best, segment_distance(q, poly.row(s).transpose(), poly.row(s + 1).transpose()));
    worst = std::max(worst, best);
  }
  return worst;
}

// Point in convex hull of a 2-D point set (hull by monotone chain).
bool in_hull(const Eigen::Vector2d& q, Eigen::MatrixXd pts, double eps) {
  std::vector<Eigen::Vector2d> v;
  for (Eigen::Index r = 0; r < pts.rows(); ++r) v.push_back(pts.row(r).transpose());
  std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]); });
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Eigen::Vector2d> h(2 * v.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], v[i]) <= 0) --k;
    h[k++] = v[i];
  }
  for (std::size_t i = v.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], v[i]) <= 0) --k;
    h[k++] = v[i];
  }
  h.resize(k - 1);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Eigen::Vector2d& a = h[i];
    const Eigen::Vector2d& b = h[(i + 1) % h.size()];
    const double len = (b - a).norm();
    if (cross(a, b, q) / len < -eps) return false;
  }
  return true;
}

}  // namespace

TEST(DesignBasis, CubicIsClassical) {
  const DesignBasis b = basis_of(oracle::polynomial_space(4));
  for (int p = 0; p <= 100; ++p) {
    const double x = p / 100.0;
    const Eigen::VectorXd v = b.eval(x, Side::plus);
    for (int l = 0; l < 4; ++l) EXPECT_NEAR(v[l], oracle::bernstein(3, l, x), 1e-10);
  }
  EXPECT_THROW(b.eval(1.5, Side::plus), Error);
}

TEST(DesignBasis, Linear) {
  const DesignBasis b = basis_of(oracle::polynomial_space(2));
  const Eigen::VectorXd v = b.eval(0.25, Side::plus);
  EXPECT_NEAR(v[0], 0.75, 1e-15);
  EXPECT_NEAR(v[1], 0.25, 1e-15);
}

TEST(DesignBasis, SampleTableThreePoints) {
  const BasisTable t = sample_basis(basis_of(oracle::polynomial_space(4)), 3);
  ASSERT_EQ(t.values.rows(), 3);
  Eigen::MatrixXd want(3, 4);
  want << 1, 0, 0, 0, 0.125, 0.375, 0.375, 0.125, 0, 0, 0, 1;
  EXPECT_LE((t.values - want).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(t.grid[1].x, 0.5);
}

TEST(DesignBasis, PartitionOfUnityAndEndpointOrders) {
  for (const SplineSpace& s : {oracle::example1_space(), oracle::example1_space(true),
                               oracle::example2_space(oracle::Family::c, -6.5)}) {
    const DesignBasis b = basis_of(s);
    const BasisTable t = sample_basis(b, 50);
    for (Eigen::Index r = 0; r < t.values.rows(); ++r)
      EXPECT_NEAR(t.values.row(r).sum(), 1.0, 1e-10);
    const int m = s.dim();
    double scale = 0.0;
    for (int i = 0; i < s.interval_count(); ++i) scale = std::max(scale, b.coeffs(i).cwiseAbs().maxCoeff());
    const double tol = 1e-8 * std::max(1.0, scale);
    for (int l = 1; l <= m; ++l) {
      for (int r = 0; r < l - 1; ++r) EXPECT_LE(std::abs(b.eval(s.a(), Side::plus, r)[l - 1]), tol);
      for (int r = 0; r < m - l; ++r) EXPECT_LE(std::abs(b.eval(s.b(), Side::minus, r)[l - 1]), tol);
    }
  }
}

TEST(DesignBasis, NonNegativeWhenSuitable) {
  const SplineSpace s = oracle::example1_space();
  ASSERT_TRUE(analyze(s).suitable);
  const BasisTable t = sample_basis(basis_of(s), 200);
  EXPECT_GE(t.values.minCoeff(), -1e-12);
}

TEST(Curve, EndpointsConstantAndSizeMismatch) {
  const DesignBasis b = basis_of(oracle::example1_space());
  ControlPolygon poly{Eigen::MatrixXd(4, 2)};
  poly.points << 0, 0, 1, 2, 3, 2, 4, 0;
  EXPECT_LE((eval_curve(b, poly, 0.0, Side::plus) - poly.points.row(0).transpose()).norm(), 1e-12);
  EXPECT_LE((eval_curve(b, poly, 6.0, Side::minus) - poly.points.row(3).transpose()).norm(), 1e-12);

  ControlPolygon same{Eigen::MatrixXd(4, 3)};
  for (int r = 0; r < 4; ++r) same.points.row(r) << 1.5, -2, 7;
  for (const auto& g : sample_curve(b, same, 20).grid) {
    const Eigen::VectorXd p = eval_curve(b, same, g.x, g.side);
    EXPECT_LE((p - same.points.row(0).transpose()).norm(), 1e-10);
  }

  ControlPolygon three{Eigen::MatrixXd::Zero(3, 2)};
  try {
    eval_curve(b, three, 1.0, Side::plus);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeMismatch);
  }
}

TEST(Curve, AffineInvariance) {
  oracle::SpaceGen gen(99);
  const DesignBasis b = basis_of(oracle::example2_space(oracle::Family::b, 10.0));
  ControlPolygon poly{Eigen::MatrixXd(5, 2)};
  for (int r = 0; r < 5; ++r) poly.points.row(r) << gen.uniform(-3, 3), gen.uniform(-3, 3);
  Eigen::Matrix2d a;
  a << gen.uniform(-2, 2), gen.uniform(-2, 2), gen.uniform(-2, 2), gen.uniform(-2, 2);
  const Eigen::Vector2d shift(gen.uniform(-5, 5), gen.uniform(-5, 5));
  ControlPolygon mapped{(poly.points * a.transpose()).rowwise() + shift.transpose()};
  for (int p = 0; p <= 40; ++p) {
    const double t = 2.0 * p / 40.0;
    const Eigen::Vector2d c = eval_curve(b, poly, t, Side::plus);
    const Eigen::Vector2d cm = eval_curve(b, mapped, t, Side::plus);
    EXPECT_LE((a * c + shift - cm).norm(), 1e-10);
  }
}

TEST(Curve, ConvexHullAndKnotContinuity) {
  const SplineSpace s = oracle::example1_space();
  const DesignBasis b = basis_of(s);
  ControlPolygon poly{Eigen::MatrixXd(4, 2)};
  poly.points << 0, 0, 1, 3, 4, 3.5, 5, -1;
  const CurveSample c = sample_curve(b, poly, 100);
  for (Eigen::Index r = 0; r < c.points.rows(); ++r)
    EXPECT_TRUE(in_hull(c.points.row(r).transpose(), poly.points, 1e-8)) << r;
  const double scale = poly.points.cwiseAbs().maxCoeff();
  for (double knot : s.knots()) {
    const Eigen::VectorXd l = eval_curve(b, poly, knot, Side::minus);
    const Eigen::VectorXd r = eval_curve(b, poly, knot, Side::plus);
    EXPECT_LE((l - r).norm(), 1e-8 * scale);
  }
}

TEST(Curve, TensionPullsTowardPolygon) {
  Eigen::MatrixXd poly(4, 2);
  poly << 0, 0, 1, 2, 3, 2, 4, 0;
  double prev = std::numeric_limits<double>::infinity();
  for (double beta : {0.0, 10.0, 100.0}) {
    const DesignBasis b = basis_of(oracle::example2_space(oracle::Family::a, beta));
    const double d = max_distance_to_polygon(sample_curve(b, ControlPolygon{poly}, 200), poly);
    EXPECT_LT(d, prev) << "beta=" << beta;
    prev = d;
  }
}

#pragma once

// Test-side oracles and generators. Nothing here calls into the library's
// numerics except to build the objects under test.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ecp/space.hpp"

namespace ecp::oracle {

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int q = 1; q <= k; ++q) r = r * (n - k + q) / q;
  return r;
}

// Classical Bernstein polynomial of degree n, index i (0-based), on [0,1].
inline double bernstein(int n, int i, double x) {
  return binom(n, i) * std::pow(x, i) * std::pow(1.0 - x, n - i);
}

// Cumulative sum f_{l,m}(x) = sum_{h>=l} C(m-1,h-1) x^{h-1} (1-x)^{m-h}.
inline double cumulative_bernstein(int m, int l, double x) {
  double s = 0.0;
  for (int h = l; h <= m; ++h) s += bernstein(m - 1, h - 1, x);
  return s;
}

// Central difference of g at x with step h; r-th derivative through
// repeated application is avoided, callers difference the (r-1)-th.
inline double central_diff(const std::function<double(double)>& g, double x, double h) {
  return (g(x + h) - g(x - h)) / (2.0 * h);
}

// Composite Simpson on [lo, hi] with n (even) panels.
inline double simpson(const std::function<double(double)>& g, double lo, double hi, int n) {
  if (n % 2) ++n;
  const double h = (hi - lo) / n;
  double s = g(lo) + g(hi);
  for (int q = 1; q < n; ++q) s += (q % 2 ? 4.0 : 2.0) * g(lo + q * h);
  return s * h / 3.0;
}

// Gaussian elimination with full pivoting; independent of Eigen's LU.
inline Eigen::VectorXd full_pivot_solve(Eigen::MatrixXd a, Eigen::VectorXd b) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> col(n);
  for (int q = 0; q < n; ++q) col[q] = q;
  for (int p = 0; p < n; ++p) {
    int br = p, bc = p;
    for (int r = p; r < n; ++r)
      for (int c = p; c < n; ++c)
        if (std::abs(a(r, c)) > std::abs(a(br, bc))) br = r, bc = c;
    a.row(p).swap(a.row(br));
    std::swap(b[p], b[br]);
    a.col(p).swap(a.col(bc));
    std::swap(col[p], col[bc]);
    for (int r = p + 1; r < n; ++r) {
      const double f = a(r, p) / a(p, p);
      a.row(r) -= f * a.row(p);
      b[r] -= f * b[p];
    }
  }
  Eigen::VectorXd y(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a(r, c) * y[c];
    y[r] = s / a(r, r);
  }
  Eigen::VectorXd x(n);
  for (int q = 0; q < n; ++q) x[col[q]] = y[q];
  return x;
}

inline Eigen::MatrixXd example1_connection() {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(4, 4);
  r.diagonal() << 1, 2, 2, 4;
  r(3, 2) = 1;
  return r;
}

inline SplineSpace example1_space(bool second_knots = false) {
  const std::vector<std::string> trig{"1", "x", "cos", "sin"};
  const std::vector<std::string> hyp{"1", "x", "cosh", "sinh"};
  const auto r = ConnectionMatrix::validate(example1_connection());
  if (second_knots)
    return build_space({0.0, 14.9}, {0.5, 5.3, 10.1}, {trig, hyp, trig, hyp},
                       {r, ConnectionMatrix::identity(4), r});
  return build_space({0.0, 6.0}, {2.0, 4.0, 5.0}, {trig, hyp, trig, hyp},
                     {r, ConnectionMatrix::identity(4), r});
}

// Example 2 families: one knot at 1 on [0, 2], beta at a single entry.
enum class Family { a, b, c };

inline SplineSpace example2_space(Family f, double beta) {
  std::vector<std::string> tokens;
  int row = 0, col = 0;
  switch (f) {
    case Family::a: tokens = {"1", "x", "x^2", "x^3"}, row = 3, col = 2; break;
    case Family::b: tokens = {"1", "x", "x^2", "cos", "sin"}, row = 4, col = 3; break;
    case Family::c: tokens = {"1", "x", "cos", "sin", "x*cos", "x*sin"}, row = 3, col = 2; break;
  }
  const int m = static_cast<int>(tokens.size());
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m, m);
  r(row, col) = beta;
  return build_space({0.0, 2.0}, {1.0}, {tokens}, {ConnectionMatrix::validate(r)});
}

inline SplineSpace polynomial_space(int m, std::vector<double> knots = {},
                                    std::pair<double, double> interval = {0.0, 1.0}) {
  std::vector<std::string> tokens{"1"};
  if (m >= 2) tokens.push_back("x");
  for (int p = 2; p < m; ++p) tokens.push_back("x^" + std::to_string(p));
  std::vector<ConnectionMatrix> conns(knots.size(), ConnectionMatrix::identity(m));
  return build_space(interval, std::move(knots), {tokens}, std::move(conns));
}

// Hand-rolled generator of random admissible spaces.
struct SpaceGen {
  std::mt19937_64 rng;
  explicit SpaceGen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

  std::string rate() {
    const double a = (coin() ? 1.0 : -1.0) * uniform(0.5, 2.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "exp(%.3f)", a);
    return buf;
  }

  // Catalog spans of dimension m whose EC property holds on intervals of
  // length <= 2.5 (all trig spans here have critical lengths >= pi).
  std::vector<std::string> section(int m) {
    switch (m) {
      case 1: return {"1"};
      case 2: {
        const int c = integer(0, 1);
        return c == 0 ? std::vector<std::string>{"1", "x"} : std::vector<std::string>{"1", rate()};
      }
      case 3: {
        switch (integer(0, 3)) {
          case 0: return {"1", "x", "x^2"};
          case 1: return {"1", "cos", "sin"};
          case 2: return {"1", "cosh", "sinh"};
          default: return {"1", "x", rate()};
        }
      }
      case 4: {
        switch (integer(0, 3)) {
          case 0: return {"1", "x", "x^2", "x^3"};
          case 1: return {"1", "x", "cos", "sin"};
          case 2: return {"1", "x", "cosh", "sinh"};
          default: return {"1", "x", "x^2", rate()};
        }
      }
      default: {
        switch (integer(0, 3)) {
          case 0: return {"1", "x", "x^2", "x^3", "x^4"};
          case 1: return {"1", "x", "x^2", "cos", "sin"};
          case 2: return {"1", "x", "x^2", "cosh", "sinh"};
          default: return {"1", "x", "x^2", "x^3", rate()};
        }
      }
    }
  }

  // Identity plus a random admissible lower-triangular perturbation.
  Eigen::MatrixXd connection(int m, double spread) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m, m);
    for (int i = 1; i < m; ++i) {
      if (coin(0.6)) r(i, i) = uniform(0.4, 2.5);
      for (int j = 1; j < i; ++j)
        if (coin(0.5)) r(i, j) = uniform(-spread, spread);
    }
    return r;
  }

  SplineSpace space(int max_m = 5, int max_k = 4, double spread = 4.0) {
    const int m = integer(2, max_m);
    const int k = integer(0, max_k);
    double x = uniform(-1.0, 1.0);
    const double a = x;
    std::vector<double> knots;
    for (int i = 0; i < k; ++i) knots.push_back(x += uniform(0.3, 2.5));
    const double b = x + uniform(0.3, 2.5);
    std::vector<std::vector<std::string>> sections;
    for (int i = 0; i <= k; ++i) sections.push_back(section(m));
    std::vector<ConnectionMatrix> conns;
    for (int i = 0; i < k; ++i) conns.push_back(ConnectionMatrix::validate(connection(m, spread)));
    return build_space({a, b}, knots, sections, conns);
  }
};

}  // namespace ecp::oracle

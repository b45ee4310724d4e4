#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ecp {

/// One generator of a section space, drawn from a closed catalog of functions
/// whose derivatives of every order have closed forms.
///
/// Textual syntax: "1", "x", "x^K" (K >= 2), "cos", "sin", "cosh", "sinh",
/// "x*cos", "x*sin", "exp(A)".
struct BasisToken {
  enum class Kind { constant, monomial, cos, sin, cosh, sinh, x_cos, x_sin, exp };

  Kind kind = Kind::constant;
  int power = 0;      // monomial only
  double rate = 0.0;  // exp only

  static BasisToken constant() { return {}; }
  static BasisToken monomial(int power);
  static BasisToken exponential(double rate) { return {Kind::exp, 0, rate}; }
  static BasisToken of(Kind kind) { return {kind, 0, 0.0}; }

  /// Parses the textual syntax above; throws Error(UnknownToken).
  static BasisToken parse(std::string_view text);
  std::string str() const;

  /// D^order of the generator at x.
  double derivative(int order, double x) const;

  friend bool operator==(const BasisToken&, const BasisToken&) = default;
};

/// An m-dimensional EC-space on [lo, hi], spanned by catalog tokens with the
/// constant function first. Immutable once built.
class SectionSpace {
 public:
  /// Throws EmptyBasis, MissingConstant, DegenerateInterval or DuplicateToken.
  SectionSpace(std::vector<BasisToken> tokens, double lo, double hi);

  static SectionSpace from_strings(std::span<const std::string> tokens, double lo, double hi);

  int dim() const { return static_cast<int>(tokens_.size()); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double length() const { return hi_ - lo_; }
  const std::vector<BasisToken>& tokens() const { return tokens_; }
  std::vector<std::string> token_strings() const;

  /// Generators are evaluated at x - origin(). The origin is lo when the span
  /// is closed under translation (same space, far better conditioned for
  /// cosh/sinh away from 0) and 0 otherwise. Coefficient vectors refer to the
  /// translated generators.
  double origin() const { return origin_; }
  static bool translation_closed(std::span<const BasisToken> tokens);

  /// Component h is D^order of token h at x. Throws OutOfInterval when x lies
  /// outside [lo, hi] (a relative slack of 1e-12 absorbs knot round-off).
  Eigen::VectorXd eval(int order, double x) const;

  /// Rows r = 0..rows-1 hold eval(r, x): the collocation block of the
  /// Hermite conditions at x.
  Eigen::MatrixXd collocation(int rows, double x) const;

  /// Value of sum_h coeffs[h] * D^order u_h(x).
  double combine(const Eigen::Ref<const Eigen::VectorXd>& coeffs, int order, double x) const;

  friend bool operator==(const SectionSpace&, const SectionSpace&) = default;

 private:
  void check_inside(double x) const;

  std::vector<BasisToken> tokens_;
  double lo_;
  double hi_;
  double origin_ = 0.0;
};

/// Known upper bounds on the interval length for which the derivative space
/// of a given span stays an EC-space.
struct CriticalLength {
  std::vector<std::string> tokens;
  double bound;
};

std::span<const CriticalLength> critical_length_table();

/// A message when the section's interval is at least as long as the tabulated
/// bound for its token set; nullopt for spans not in the table.
std::optional<std::string> critical_length_warning(const SectionSpace& space);

}  // namespace ecp

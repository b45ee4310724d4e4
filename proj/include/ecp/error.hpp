#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecp {

enum class ErrorCode {
  EmptyBasis,
  MissingConstant,
  DegenerateInterval,
  DuplicateToken,
  UnknownToken,
  OutOfInterval,
  NotLowerTriangular,
  NonPositiveDiagonal,
  BadFirstRowOrColumn,
  CountMismatch,
  KnotsNotIncreasing,
  DimensionMismatch,
  IntervalMismatch,
  SingularSystem,
  DependentTransitions,
  SingularChangeOfBasis,
  NearZeroWeight,
  SizeMismatch,
  InvalidSpec,
};

std::string_view to_string(ErrorCode code);

/// Base of every exception thrown by the library. The code names the violated
/// clause; what() carries a human readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// The Hermite system for transition function `ell` has no unique solution.
class SingularSystemError : public Error {
 public:
  SingularSystemError(int ell, double rcond, const std::string& message)
      : Error(ErrorCode::SingularSystem, message), ell_(ell), rcond_(rcond) {}

  int ell() const noexcept { return ell_; }
  double rcond() const noexcept { return rcond_; }

 private:
  int ell_;
  double rcond_;
};

class NearZeroWeightError : public Error {
 public:
  NearZeroWeightError(int level, double x, double value)
      : Error(ErrorCode::NearZeroWeight,
              "weight w_" + std::to_string(level) + " vanishes numerically at x=" +
                  std::to_string(x)),
        level_(level),
        x_(x),
        value_(value) {}

  int level() const noexcept { return level_; }
  double x() const noexcept { return x_; }
  double value() const noexcept { return value_; }

 private:
  int level_;
  double x_;
  double value_;
};

}  // namespace ecp

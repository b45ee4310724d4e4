#include "ecp/error.hpp"

namespace ecp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyBasis: return "EmptyBasis";
    case ErrorCode::MissingConstant: return "MissingConstant";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::DuplicateToken: return "DuplicateToken";
    case ErrorCode::UnknownToken: return "UnknownToken";
    case ErrorCode::OutOfInterval: return "OutOfInterval";
    case ErrorCode::NotLowerTriangular: return "NotLowerTriangular";
    case ErrorCode::NonPositiveDiagonal: return "NonPositiveDiagonal";
    case ErrorCode::BadFirstRowOrColumn: return "BadFirstRowOrColumn";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::KnotsNotIncreasing: return "KnotsNotIncreasing";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IntervalMismatch: return "IntervalMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::DependentTransitions: return "DependentTransitions";
    case ErrorCode::SingularChangeOfBasis: return "SingularChangeOfBasis";
    case ErrorCode::NearZeroWeight: return "NearZeroWeight";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

}  // namespace ecp

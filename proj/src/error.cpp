#include "gword/error.hpp"

namespace gword {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::SplitOutOfRange: return "SplitOutOfRange";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ZeroExponent: return "ZeroExponent";
    case ErrorCode::ExactModeUnsupported: return "ExactModeUnsupported";
    case ErrorCode::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorCode::NotTwoEigenvalues: return "NotTwoEigenvalues";
    case ErrorCode::MoreThanTwoEigenvalues: return "MoreThanTwoEigenvalues";
    case ErrorCode::MultiplicityTooLow: return "MultiplicityTooLow";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NotProvablyBad: return "NotProvablyBad";
    case ErrorCode::SweepExhausted: return "SweepExhausted";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace gword

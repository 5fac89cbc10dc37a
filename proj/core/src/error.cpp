#include "kzred/error.hpp"

namespace kzred {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kBothZero: return "BothZero";
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kZeroDiagonal: return "ZeroDiagonal";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kRadiusUnderflow: return "RadiusUnderflow";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kInvalidDelta: return "InvalidDelta";
    case ErrorCode::kNonPrimitiveVector: return "NonPrimitiveVector";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kSearchAborted: return "SearchAborted";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace kzred

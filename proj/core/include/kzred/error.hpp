#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kzred {

enum class ErrorCode {
  kInvalidArgument,
  kRankDeficient,
  kNonFinite,
  kDegenerateInput,
  kIndexOutOfRange,
  kBothZero,
  kNotSquare,
  kZeroDiagonal,
  kNonConvergence,
  kRadiusUnderflow,
  kDimensionTooLarge,
  kInvalidDelta,
  kNonPrimitiveVector,
  kZeroVector,
  kSearchAborted,
  kTimeout,
  kConfigInvalid,
  kIoError,
  kParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Work limits shared by the enumeration and reduction loops. A run that
// exceeds the node cap raises kSearchAborted; one that passes the deadline
// raises kTimeout.
struct SearchBudget {
  using Clock = std::chrono::steady_clock;

  std::uint64_t node_cap = 1'000'000'000;
  std::optional<Clock::time_point> deadline;

  static SearchBudget with_timeout(std::chrono::duration<double> timeout) {
    SearchBudget b;
    b.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(timeout);
    return b;
  }

  void check_deadline() const {
    if (deadline && Clock::now() > *deadline) {
      throw Error(ErrorCode::kTimeout, "wall-clock budget exhausted");
    }
  }
};

}  // namespace kzred

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubetool {

// Stable error categories. The numeric values are mirrored by the C API
// status codes in cubetool.h, so append only.
enum class ErrorCode {
  kMalformedComplex = 10,
  kMalformedMap = 11,
  kMalformedInput = 12,
  kUnknownVertex = 13,
  kUnknownWall = 14,
  kUnknownCoset = 15,
  kUnknownClass = 16,
  kUnknownCorpusItem = 17,
  kDimensionCapExceeded = 20,
  kNotDimensionPreserving = 21,
  kNotNpc = 22,
  kDisconnected = 23,
  kRequiresTwoSided = 24,
  kOneSidedWall = 25,
  kNotConvex = 26,
  kAmbiguous = 27,
  kEmptyRegion = 28,
  kPreconditionFailed = 30,
  kCoveringCheckFailed = 31,
  kNotCovering = 32,
  kConditionFailed = 33,
  kDiagramFailed = 34,
  kConditionViolated = 35,
  kOracleInconsistent = 40,
  kBallBudgetExceeded = 41,
  kBudgetExceeded = 42,
  kNotSpanningTree = 50,
  kNotACircuit = 51,
  kUnbalanced = 52,
  kInternal = 99,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::vector<std::string> details = {})
      : std::runtime_error(std::move(message)), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace cubetool

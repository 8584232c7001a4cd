#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infoflow {

enum class Errc {
  kInvalidArgument,
  kZeroTotalCount,
  kTupleOutOfRange,
  kEmptyAxisSet,
  kOverlappingAxisSets,
  kTooFewParts,
  kAbsoluteContinuityViolation,
  kIndexOutOfRange,
  kSystemTooLarge,
  kSelfPair,
  kSeriesTooShort,
  kConstantSeries,
  kUnfittedNull,
  kShapeMismatch,
  kNTooLarge,
  kOutOfDomain,
  kDivergedTrajectory,
  kParseError,
};

std::string_view to_string(Errc code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace infoflow

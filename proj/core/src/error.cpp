#include "infoflow/error.hpp"

namespace infoflow {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kZeroTotalCount: return "ZeroTotalCount";
    case Errc::kTupleOutOfRange: return "TupleOutOfRange";
    case Errc::kEmptyAxisSet: return "EmptyAxisSet";
    case Errc::kOverlappingAxisSets: return "OverlappingAxisSets";
    case Errc::kTooFewParts: return "TooFewParts";
    case Errc::kAbsoluteContinuityViolation: return "AbsoluteContinuityViolation";
    case Errc::kIndexOutOfRange: return "IndexOutOfRange";
    case Errc::kSystemTooLarge: return "SystemTooLarge";
    case Errc::kSelfPair: return "SelfPair";
    case Errc::kSeriesTooShort: return "SeriesTooShort";
    case Errc::kConstantSeries: return "ConstantSeries";
    case Errc::kUnfittedNull: return "UnfittedNull";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kNTooLarge: return "NTooLarge";
    case Errc::kOutOfDomain: return "OutOfDomain";
    case Errc::kDivergedTrajectory: return "DivergedTrajectory";
    case Errc::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace infoflow

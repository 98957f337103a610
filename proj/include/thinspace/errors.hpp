#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thinspace {

enum class ErrorCode {
  Parse,
  Io,
  Usage,
  BadParameters,
  DisconnectedGraph,
  NonPositiveEdge,
  SelfLoop,
  UnknownVertex,
  EmptyTarget,
  TargetNotInSet,
  BudgetExceeded,
  HypothesisNotMet,
  NotThinEvidence,
  CircleBranchUnreachable,
  AnchorsOverlap,
  EmptyAnchorNeighborhood,
  SkeletonMismatch,
  AmbiguousSide,
  OutOfChart,
  BadK,
  UnsupportedBase,
  InvariantViolated,
  BadExponent,
};

/// Machine-readable code carried in CLI error reports.
inline std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::Io: return "E_IO";
    case ErrorCode::Usage: return "E_USAGE";
    case ErrorCode::BadParameters: return "E_BAD_PARAMETERS";
    case ErrorCode::DisconnectedGraph: return "E_DISCONNECTED_GRAPH";
    case ErrorCode::NonPositiveEdge: return "E_NON_POSITIVE_EDGE";
    case ErrorCode::SelfLoop: return "E_SELF_LOOP";
    case ErrorCode::UnknownVertex: return "E_UNKNOWN_VERTEX";
    case ErrorCode::EmptyTarget: return "E_EMPTY_TARGET";
    case ErrorCode::TargetNotInSet: return "E_TARGET_NOT_IN_SET";
    case ErrorCode::BudgetExceeded: return "E_BUDGET_EXCEEDED";
    case ErrorCode::HypothesisNotMet: return "E_HYPOTHESIS_NOT_MET";
    case ErrorCode::NotThinEvidence: return "E_NOT_THIN_EVIDENCE";
    case ErrorCode::CircleBranchUnreachable: return "E_CIRCLE_BRANCH_UNREACHABLE";
    case ErrorCode::AnchorsOverlap: return "E_ANCHORS_OVERLAP";
    case ErrorCode::EmptyAnchorNeighborhood: return "E_EMPTY_ANCHOR_NEIGHBORHOOD";
    case ErrorCode::SkeletonMismatch: return "E_SKELETON_MISMATCH";
    case ErrorCode::AmbiguousSide: return "E_AMBIGUOUS_SIDE";
    case ErrorCode::OutOfChart: return "E_OUT_OF_CHART";
    case ErrorCode::BadK: return "E_BAD_K";
    case ErrorCode::UnsupportedBase: return "E_UNSUPPORTED_BASE";
    case ErrorCode::InvariantViolated: return "E_INVARIANT_VIOLATED";
    case ErrorCode::BadExponent: return "E_BAD_EXPONENT";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace thinspace

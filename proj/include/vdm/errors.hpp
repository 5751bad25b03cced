#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vdm {

enum class ErrorCode {
  ZeroNodeWithNonIntegerExponent,
  NonSquareMatrix,
  RepeatedNodes,
  IndexOutOfRange,
  LengthMismatch,
  DimensionTooSmall,
  RootFindingFailure,
  CapExceeded,
  ZeroNode,
  DimensionGuard,
  DegenerateExponents,
  UnsupportedDimension,
  GeneralizedOnlyFor3D,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroNodeWithNonIntegerExponent: return "ZeroNodeWithNonIntegerExponent";
    case ErrorCode::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorCode::RepeatedNodes: return "RepeatedNodes";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::RootFindingFailure: return "RootFindingFailure";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::ZeroNode: return "ZeroNode";
    case ErrorCode::DimensionGuard: return "DimensionGuard";
    case ErrorCode::DegenerateExponents: return "DegenerateExponents";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::GeneralizedOnlyFor3D: return "GeneralizedOnlyFor3D";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vdm

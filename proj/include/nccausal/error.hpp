#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nccausal {

enum class ErrorKind {
  NotHermitian,
  NotUnitary,
  ZeroVector,
  PoleState,
  InvalidDirac,
  NonCausalSegment,
  NotCausallyRelated,
  GradientMismatch,
  GridTooSmall,
  InvalidArgument,
  UnknownState,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::PoleState: return "PoleState";
    case ErrorKind::InvalidDirac: return "InvalidDirac";
    case ErrorKind::NonCausalSegment: return "NonCausalSegment";
    case ErrorKind::NotCausallyRelated: return "NotCausallyRelated";
    case ErrorKind::GradientMismatch: return "GradientMismatch";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnknownState: return "UnknownState";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace nccausal

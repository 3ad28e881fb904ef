#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tilecraft {

enum class ErrorCode {
  InvalidArgument,
  ZeroVector,
  OutOfWindow,
  EmptyWindow,
  NotConvex,
  DoesNotFit,
  Parse,
  Schema,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::DoesNotFit: return "DoesNotFit";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tilecraft

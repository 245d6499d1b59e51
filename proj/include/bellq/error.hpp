#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bellq {

enum class ErrorCode {
  NonSquare,
  NotHermitian,
  NonFinite,
  DimensionTooSmall,
  DimensionMismatch,
  WrongDimension,
  NonPrimeDimension,
  InvalidCoefficients,
  InvalidBloch,
  InvalidConfig,
  Parse,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Thrown whenever an operation's precondition or a type invariant is violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bellq

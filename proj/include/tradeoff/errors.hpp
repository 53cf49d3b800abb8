#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tradeoff {

enum class ErrorCode {
  NonHermitian,
  InvalidState,
  DimMismatch,
  InvalidParams,
  RankDeficient,
  MixedStates,
  NotInfoComplete,
  DomainError,
  DegenerateBranch,
  InternalError,
  SchemaError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace tradeoff

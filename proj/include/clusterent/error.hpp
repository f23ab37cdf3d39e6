#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clusterent {

enum class ErrorCode {
  NonHermitian,
  TraceNotOne,
  NegativeFidelity,
  NegativeEntry,
  NotNormalized,
  RegionUnreachable,
  MutualExclusionBreach,
  InvalidQuad,
  DomainError,
  RegionMismatch,
  NotConverged,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Domain error raised by every module. The code is stable and is what the
/// CLI reports in its machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clusterent

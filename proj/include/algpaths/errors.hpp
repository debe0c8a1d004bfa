#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace algpaths {

enum class ErrorKind {
  InvalidArgument,
  NotNearIdentity,
  MultipleRoots,
  NotAlgebraic,
  EmptyRealPart,
  ResolutionResidualExceeded,
  BadSignature,
  RankAmbiguous,
  DimMismatch,
  RootMismatch,
  CentralElement,
  SearchExhausted,
  NotLocallyClose,
  NotSameComponent,
  FactorizationFailed,
  NotSelfAdjoint,
  SubspaceSplitFailed,
  CertificationFailed,
};

std::string_view to_string(ErrorKind kind);

/// Short scientific rendering of a residual for error messages.
inline std::string format_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// True for kinds that report a failed numerical certificate rather than a
/// violated precondition. The CLI maps the two groups to different exit codes.
bool is_certification_failure(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, double value = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        value_(value) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Offending quantity (a residual, a norm) when one exists.
  double value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  double value_;
};

}  // namespace algpaths

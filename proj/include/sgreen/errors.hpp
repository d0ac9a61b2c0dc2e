#pragma once

#include <stdexcept>
#include <string>

namespace sgreen {

/// Broad failure class; the CLI maps each to an exit status.
enum class ErrorCategory { Config, Computation, Io };

/// Base of every library error. `kind()` is a stable, machine-readable class
/// name (e.g. "DependentSolutions") printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, ErrorCategory category, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)), category_(category) {}

  const std::string& kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_; }

 private:
  std::string kind_;
  ErrorCategory category_;
};

#define SGREEN_DEFINE_ERROR(Name, Category)                 \
  class Name : public Error {                               \
   public:                                                  \
    explicit Name(const std::string& message)               \
        : Error(#Name, ErrorCategory::Category, message) {} \
  };

// configuration
SGREEN_DEFINE_ERROR(ParseError, Config)
SGREEN_DEFINE_ERROR(ValidationError, Config)

// sl-core
SGREEN_DEFINE_ERROR(NonPositiveMass, Computation)
SGREEN_DEFINE_ERROR(IntegrationFailure, Computation)
SGREEN_DEFINE_ERROR(DependentSolutions, Computation)
SGREEN_DEFINE_ERROR(NonConstantReduced, Computation)

// dressing
SGREEN_DEFINE_ERROR(ResonantDenominator, Computation)
SGREEN_DEFINE_ERROR(ZeroDiagonal, Computation)
SGREEN_DEFINE_ERROR(SingularDenominator, Computation)

// scattering and propagation
SGREEN_DEFINE_ERROR(EvanescentChannel, Computation)
SGREEN_DEFINE_ERROR(WindowViolation, Computation)
SGREEN_DEFINE_ERROR(SpectralTruncation, Computation)
SGREEN_DEFINE_ERROR(CalibrationFailure, Computation)

// io
SGREEN_DEFINE_ERROR(IoError, Io)

#undef SGREEN_DEFINE_ERROR

}  // namespace sgreen

#pragma once

#include <stdexcept>
#include <string>

namespace priorglue {

enum class ErrorKind {
  DuplicateLabel,
  UnknownAtom,
  SpaceMismatch,
  DomainViolation,
  InvalidMeasure,
  IncompatibleFamily,
  ZeroProbabilityEvidence,
  DuplicateAgent,
  EmptyFamily,
  GcViolation,
  InvalidEvidence,
  TooLarge,
  InvalidConfig,
  MalformedMass,
  MalformedInput,
  UnknownDemo,
};

const char* to_string(ErrorKind kind);

// Base of every error raised by the library. Subclasses carry structured
// payloads where a caller can act on them (reports, positions).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace priorglue

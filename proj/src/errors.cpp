#include "priorglue/errors.hpp"

namespace priorglue {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnknownAtom: return "UnknownAtom";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::InvalidMeasure: return "InvalidMeasure";
    case ErrorKind::IncompatibleFamily: return "IncompatibleFamily";
    case ErrorKind::ZeroProbabilityEvidence: return "ZeroProbabilityEvidence";
    case ErrorKind::DuplicateAgent: return "DuplicateAgent";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::GcViolation: return "GcViolation";
    case ErrorKind::InvalidEvidence: return "InvalidEvidence";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::MalformedMass: return "MalformedMass";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::UnknownDemo: return "UnknownDemo";
  }
  return "Unknown";
}

}  // namespace priorglue

#include "sessile/errors.hpp"

namespace sessile {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Convergence: return "ConvergenceError";
    case ErrorKind::DegenerateWidth: return "DegenerateWidthError";
    case ErrorKind::Mesh: return "MeshError";
    case ErrorKind::Assembly: return "AssemblyError";
    case ErrorKind::SingularSystem: return "SingularSystemError";
    case ErrorKind::Step: return "StepError";
    case ErrorKind::Fit: return "FitError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

ParseError::ParseError(int line, const std::string& w)
    : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + w), line_(line) {}

}  // namespace sessile

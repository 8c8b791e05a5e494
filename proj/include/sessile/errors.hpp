#pragma once

#include <stdexcept>
#include <string>

namespace sessile {

enum class ErrorKind {
  Domain,
  Convergence,
  DegenerateWidth,
  Mesh,
  Assembly,
  SingularSystem,
  Step,
  Fit,
  Parse,
  Validation,
  Io,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

#define SESSILE_DEFINE_ERROR(Name, Kind)                              \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& w) : Error(ErrorKind::Kind, w) {} \
  };

SESSILE_DEFINE_ERROR(DomainError, Domain)
SESSILE_DEFINE_ERROR(ConvergenceError, Convergence)
SESSILE_DEFINE_ERROR(DegenerateWidthError, DegenerateWidth)
SESSILE_DEFINE_ERROR(MeshError, Mesh)
SESSILE_DEFINE_ERROR(AssemblyError, Assembly)
SESSILE_DEFINE_ERROR(SingularSystemError, SingularSystem)
SESSILE_DEFINE_ERROR(StepError, Step)
SESSILE_DEFINE_ERROR(FitError, Fit)
SESSILE_DEFINE_ERROR(ValidationError, Validation)
SESSILE_DEFINE_ERROR(IoError, Io)

#undef SESSILE_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& w);
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace sessile

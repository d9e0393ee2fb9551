#pragma once

#include <stdexcept>
#include <string>

namespace minrep {

// Broad failure categories; the CLI maps these to process exit codes.
enum class ErrorKind {
  Finding = 1,  // mathematical inconsistency detected by the toolkit itself
  Usage = 2,    // caller violated a documented precondition
  Cap = 3,      // configured size cap exceeded
  Io = 4,       // file or parse trouble
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

#define MINREP_ERROR(Name, Kind)                                  \
  struct Name : Error {                                           \
    explicit Name(const std::string& msg) : Error(Kind, msg) {}   \
  }

MINREP_ERROR(NonBijective, ErrorKind::Usage);
MINREP_ERROR(BadParameter, ErrorKind::Usage);
MINREP_ERROR(InvalidAction, ErrorKind::Usage);
MINREP_ERROR(NotAbelian, ErrorKind::Usage);
MINREP_ERROR(NotASubgroup, ErrorKind::Usage);
MINREP_ERROR(NonlinearCharacter, ErrorKind::Usage);
MINREP_ERROR(GcdPreconditionViolated, ErrorKind::Usage);
MINREP_ERROR(NotA2Group, ErrorKind::Usage);
MINREP_ERROR(ParameterConstraintViolated, ErrorKind::Usage);

MINREP_ERROR(ClosureExceedsCap, ErrorKind::Cap);
MINREP_ERROR(LatticeCapExceeded, ErrorKind::Cap);
MINREP_ERROR(CapExceeded, ErrorKind::Cap);
MINREP_ERROR(TooManyIrreducibles, ErrorKind::Cap);
MINREP_ERROR(IndexCapExceeded, ErrorKind::Cap);

MINREP_ERROR(InternalVerificationFailed, ErrorKind::Finding);
MINREP_ERROR(PostconditionFailed, ErrorKind::Finding);
MINREP_ERROR(AmbiguousFamily, ErrorKind::Finding);

MINREP_ERROR(ParseError, ErrorKind::Io);
MINREP_ERROR(IoError, ErrorKind::Io);

#undef MINREP_ERROR

}  // namespace minrep

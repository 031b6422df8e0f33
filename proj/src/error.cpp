#include "olk/error.hpp"

namespace olk {

const char* error_token(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Parse: return "parse_error";
    case ErrorKind::OutsideSpace: return "outside_space";
    case ErrorKind::HorizonExceeded: return "horizon_exceeded";
    case ErrorKind::Precondition: return "precondition_violated";
    case ErrorKind::DomainMismatch: return "domain_mismatch";
    case ErrorKind::Inconsistent: return "inconsistent";
    case ErrorKind::Io: return "io_error";
  }
  return "unknown";
}

}  // namespace olk

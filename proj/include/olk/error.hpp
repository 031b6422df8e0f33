#ifndef OLK_ERROR_HPP
#define OLK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace olk {

/// Error classes surfaced by the library. Each has a stable token that the
/// C API and the command-line tool print verbatim.
enum class ErrorKind {
  InvalidArgument,
  Parse,
  OutsideSpace,
  HorizonExceeded,
  Precondition,
  DomainMismatch,
  Inconsistent,
  Io,
};

const char* error_token(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by config and `.steps` parsing; carries the offending key (or line).
class ParseError : public Error {
 public:
  ParseError(std::string key, const std::string& what)
      : Error(ErrorKind::Parse, what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace olk

#endif  // OLK_ERROR_HPP

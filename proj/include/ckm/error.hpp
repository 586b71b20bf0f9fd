#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ckm {

enum class ErrorKind {
  InvalidSpec,
  InvalidRing,
  MalformedExpression,
  DegeneratePairing,
  NonLefschetzRange,
  RingMismatch,
  OddRankObstruction,
  NotIdempotent,
  PreconditionViolated,
  IncompleteInput,
  UnsupportedAction,
  NotRingMap,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the named kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace ckm

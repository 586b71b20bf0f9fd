#include "ckm/error.hpp"

namespace ckm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidRing: return "InvalidRing";
    case ErrorKind::MalformedExpression: return "MalformedExpression";
    case ErrorKind::DegeneratePairing: return "DegeneratePairing";
    case ErrorKind::NonLefschetzRange: return "NonLefschetzRange";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::OddRankObstruction: return "OddRankObstruction";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::IncompleteInput: return "IncompleteInput";
    case ErrorKind::UnsupportedAction: return "UnsupportedAction";
    case ErrorKind::NotRingMap: return "NotRingMap";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace ckm

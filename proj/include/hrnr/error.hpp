#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hrnr {

enum class ErrorKind {
  InvalidModel,
  ParseError,
  NotNormal,
  NotContraction,
  NotStrictContraction,
  NotSelfAdjoint,
  RankExceedsDimension,
  InsufficientDimension,
  UncertainGeometry,
  EigFailure,
  NotOnSegment,
  CoincidentEndpoints,
  NoSeparatingAngle,
  NoWuWitness,
  AtomNotStrictContraction,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NotStrictContraction: return "NotStrictContraction";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::RankExceedsDimension: return "RankExceedsDimension";
    case ErrorKind::InsufficientDimension: return "InsufficientDimension";
    case ErrorKind::UncertainGeometry: return "UncertainGeometry";
    case ErrorKind::EigFailure: return "EigFailure";
    case ErrorKind::NotOnSegment: return "NotOnSegment";
    case ErrorKind::CoincidentEndpoints: return "CoincidentEndpoints";
    case ErrorKind::NoSeparatingAngle: return "NoSeparatingAngle";
    case ErrorKind::NoWuWitness: return "NoWuWitness";
    case ErrorKind::AtomNotStrictContraction: return "AtomNotStrictContraction";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` identifies the failed
/// precondition so callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace hrnr

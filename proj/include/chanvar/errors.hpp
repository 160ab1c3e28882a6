#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chanvar {

enum class ErrorKind {
  NotHermitian,
  NotPositive,
  NotNormalized,
  NotCPTP,
  NotUnitary,
  NotUnital,
  NotFinite,
  BlochOutOfBall,
  ZeroBloch,
  OutOfRange,
  DimMismatch,
  SizeMismatch,
  BadRank,
  MissingBloch,
  Schema,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotCPTP: return "NotCPTP";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::BlochOutOfBall: return "BlochOutOfBall";
    case ErrorKind::ZeroBloch: return "ZeroBloch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::MissingBloch: return "MissingBloch";
    case ErrorKind::Schema: return "Schema";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

// Raised by every validating constructor and operation in the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // True for violations of a mathematical invariant of a state or channel,
  // as opposed to malformed arguments.
  bool is_invariant_violation() const noexcept {
    switch (kind_) {
      case ErrorKind::NotHermitian:
      case ErrorKind::NotPositive:
      case ErrorKind::NotNormalized:
      case ErrorKind::NotCPTP:
      case ErrorKind::NotUnitary:
      case ErrorKind::NotFinite:
      case ErrorKind::BlochOutOfBall:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace chanvar

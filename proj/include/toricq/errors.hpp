#pragma once

#include <stdexcept>
#include <string>

namespace toricq {

enum class ErrorKind {
  InvalidFan,
  NotACone,
  NotComplete,
  NotIntegral,
  EmptySet,
  NotEffectiveSupport,
  UnboundedRegion,
  NoStabilizationDetected,
  ModeDisagreement,
  InternalConsistency,
  InvalidArgument,
  Schema,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidFan: return "InvalidFan";
    case ErrorKind::NotACone: return "NotACone";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotEffectiveSupport: return "NotEffectiveSupport";
    case ErrorKind::UnboundedRegion: return "UnboundedRegion";
    case ErrorKind::NoStabilizationDetected: return "NoStabilizationDetected";
    case ErrorKind::ModeDisagreement: return "ModeDisagreement";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Schema: return "SchemaError";
  }
  return "Unknown";
}

/// Internal-consistency failures are bugs (or violated mathematical
/// preconditions), not bad user input.
inline bool is_internal(ErrorKind k) {
  return k == ErrorKind::UnboundedRegion || k == ErrorKind::ModeDisagreement ||
         k == ErrorKind::InternalConsistency;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace toricq

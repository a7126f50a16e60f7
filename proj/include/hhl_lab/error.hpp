#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hhl_lab {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  BadParameter,
  DimensionMismatch,
  DomainError,
  InsufficientClockRegister,
  NotNormalized,
  ClockNotZero,
  FlagNotClean,
  ZeroProbability,
  FormulaMismatch,
  BoundViolation,
  IllConditionedInput,
  IoError,
  ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InsufficientClockRegister: return "InsufficientClockRegister";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::ClockNotZero: return "ClockNotZero";
    case ErrorKind::FlagNotClean: return "FlagNotClean";
    case ErrorKind::ZeroProbability: return "ZeroProbability";
    case ErrorKind::FormulaMismatch: return "FormulaMismatch";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::IllConditionedInput: return "IllConditionedInput";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hhl_lab

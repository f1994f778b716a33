#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dduet {

enum class ErrorCode {
  NonFiniteSymbol,
  EmptyTrajectory,
  OutOfSpan,
  NoContraction,
  NonzeroMeanVelocity,
  UnresolvedSoliton,
  ZeroBeta,
  DegenerateCouplings,
  StepUnderflow,
  EmptyLog,
  HypothesisViolated,
  PreconditionViolated,
  LatticeMismatch,
  InvalidArgument,
  SchemaError,
  BadMagic,
  VersionMismatch,
  DimsMismatch,
  SystemMismatch,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFiniteSymbol: return "NonFiniteSymbol";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::OutOfSpan: return "OutOfSpan";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::NonzeroMeanVelocity: return "NonzeroMeanVelocity";
    case ErrorCode::UnresolvedSoliton: return "UnresolvedSoliton";
    case ErrorCode::ZeroBeta: return "ZeroBeta";
    case ErrorCode::DegenerateCouplings: return "DegenerateCouplings";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::EmptyLog: return "EmptyLog";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::LatticeMismatch: return "LatticeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::DimsMismatch: return "DimsMismatch";
    case ErrorCode::SystemMismatch: return "SystemMismatch";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

}  // namespace dduet

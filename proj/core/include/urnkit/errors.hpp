#pragma once

#include <stdexcept>
#include <string>

namespace urnkit {

// Failure codes surfaced by the library. Each maps 1:1 onto a documented
// error condition of some operation; tests match on the code, not the text.
enum class Errc {
  MeanMismatch,
  DominationViolation,
  BadSupport,
  NonPositiveInitial,
  EmptyCheckpoints,
  CheckpointOutOfRange,
  HorizonTooSmall,
  ProxyMismatch,
  LambdaOutOfRange,
  ZeroPooledMean,
  UndefinedEstimator,
  ZeroMean,
  SmallJstar,
  BadAlpha,
  BadProbability,
  TooFewSamples,
  TooFewReplications,
  BadPanel,
  BadConfig,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MeanMismatch: return "MeanMismatch";
    case Errc::DominationViolation: return "DominationViolation";
    case Errc::BadSupport: return "BadSupport";
    case Errc::NonPositiveInitial: return "NonPositiveInitial";
    case Errc::EmptyCheckpoints: return "EmptyCheckpoints";
    case Errc::CheckpointOutOfRange: return "CheckpointOutOfRange";
    case Errc::HorizonTooSmall: return "HorizonTooSmall";
    case Errc::ProxyMismatch: return "ProxyMismatch";
    case Errc::LambdaOutOfRange: return "LambdaOutOfRange";
    case Errc::ZeroPooledMean: return "ZeroPooledMean";
    case Errc::UndefinedEstimator: return "UndefinedEstimator";
    case Errc::ZeroMean: return "ZeroMean";
    case Errc::SmallJstar: return "SmallJstar";
    case Errc::BadAlpha: return "BadAlpha";
    case Errc::BadProbability: return "BadProbability";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::TooFewReplications: return "TooFewReplications";
    case Errc::BadPanel: return "BadPanel";
    case Errc::BadConfig: return "BadConfig";
  }
  return "UnknownError";
}

class UrnError : public std::runtime_error {
 public:
  UrnError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw UrnError(code, what);
}

}  // namespace urnkit

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scatseq {

enum class Errc {
  NonPrimeCharacteristic,
  ReducibleModulus,
  DegreeMismatch,
  FieldTooLarge,
  InvalidArgument,
  ParseError,
  ArityMismatch,
  DimensionMismatch,
  WrongAmbient,
  NotMaximumScattered,
  TooLargeToExhaust,
  InternalInconsistency,
  DegenerateCode,
  WrongDimension,
  NotFullSpan,
  MinDistanceOne,
  NonCoprimeShift,
  HypothesisOutOfRange,
  NoCompatibleEmbedding,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::WrongAmbient: return "WrongAmbient";
    case Errc::NotMaximumScattered: return "NotMaximumScattered";
    case Errc::TooLargeToExhaust: return "TooLargeToExhaust";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::DegenerateCode: return "DegenerateCode";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::NotFullSpan: return "NotFullSpan";
    case Errc::MinDistanceOne: return "MinDistanceOne";
    case Errc::NonCoprimeShift: return "NonCoprimeShift";
    case Errc::HypothesisOutOfRange: return "HypothesisOutOfRange";
    case Errc::NoCompatibleEmbedding: return "NoCompatibleEmbedding";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Execution knobs shared by every exhaustive routine.
struct Exec {
  unsigned threads = 0;                   // 0 = hardware concurrency
  std::uint64_t budget = std::uint64_t{1} << 24;  // max objects enumerated by one call
};

inline void require_budget(std::uint64_t needed, const Exec& exec, const char* what) {
  if (needed > exec.budget) {
    throw Error(Errc::TooLargeToExhaust, std::string(what) + " needs " + std::to_string(needed) +
                                             " steps, budget is " + std::to_string(exec.budget));
  }
}

}  // namespace scatseq

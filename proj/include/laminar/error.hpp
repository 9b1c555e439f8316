#pragma once

#include <stdexcept>
#include <string>

namespace laminar {

enum class ErrorCode {
  DivisionByZero,
  ParseError,
  IncomparableCharts,
  InexactConversion,
  ChartMismatch,
  NonPositiveDeterminant,
  DegenerateChord,
  InvalidLamination,
  NotADistinctPair,
  BadSeed,
  OverlappingArcs,
  UnsupportedKind,
  NotParabolic,
  LeafNotAtFixedPoint,
  BadIntervalChoice,
  DegenerateSample,
  Exhausted,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported through this type; the code is what
// callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace laminar

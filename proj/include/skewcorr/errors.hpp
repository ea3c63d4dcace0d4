#pragma once

#include <stdexcept>
#include <string>

namespace skewcorr {

enum class ErrorKind {
  NotHermitian,
  NotPositive,
  NotUnitTrace,
  NotSquare,
  NotTracePreserving,
  NotUnitary,
  NotOrthonormal,
  DimensionMismatch,
  InvalidArgument,
  ImaginaryResidue,
  FormDisagreement,
  NegativeCorrelation,
  NotConverged,
  Io,
};

const char* to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. `deviation()`
/// carries the offending magnitude when there is one (max-abs residual,
/// imaginary part, negative value), otherwise 0.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double deviation = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        deviation_(deviation) {}

  ErrorKind kind() const noexcept { return kind_; }
  double deviation() const noexcept { return deviation_; }

 private:
  ErrorKind kind_;
  double deviation_;
};

}  // namespace skewcorr

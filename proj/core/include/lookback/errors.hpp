#pragma once

#include <stdexcept>
#include <string>

namespace lookback {

/// Violation of an operation's domain contract (bad parameter ranges,
/// x > x_star, invalid measures, ...). Maps to exit code 1 in the CLI.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A function claimed to be a (scaled) simple lookback adjuster fails the
/// unit-integral budget. Carries the offending integral value.
class NotAnSlaError : public DomainError {
 public:
  NotAnSlaError(const std::string& what, double integral)
      : DomainError(what), integral_(integral) {}
  double integral() const { return integral_; }

 private:
  double integral_;
};

/// A numeric routine could not certify the requested tolerance
/// (quadrature non-convergence, majorant grid too coarse, ...).
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Malformed input file or flag. Maps to exit code 2 in the CLI.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lookback

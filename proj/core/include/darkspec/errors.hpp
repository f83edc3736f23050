#pragma once

#include <stdexcept>
#include <string>

namespace darkspec {

// Root of every error raised by the library. The CLI maps each subclass to
// its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

class PoleAtBandEdge : public Error {
 public:
  explicit PoleAtBandEdge(double delta_lambda);
  double delta_lambda() const noexcept { return delta_lambda_; }

 private:
  double delta_lambda_;
};

class PoleAtDefect : public Error {
 public:
  explicit PoleAtDefect(double delta_lambda);
  double delta_lambda() const noexcept { return delta_lambda_; }

 private:
  double delta_lambda_;
};

class NonPositiveTau : public Error {
 public:
  explicit NonPositiveTau(double tau);
};

class DegenerateDenominator : public Error {
 public:
  explicit DegenerateDenominator(double delta_lambda);
  double delta_lambda() const noexcept { return delta_lambda_; }

 private:
  double delta_lambda_;
};

class StepTooLarge : public Error {
 public:
  StepTooLarge(double dt, double change);
  double change() const noexcept { return change_; }

 private:
  double change_;
};

// Raised when a trajectory still carries excited population at the horizon
// and was not flagged as a trapping configuration.
class TruncationWarning : public Error {
 public:
  explicit TruncationWarning(double residual_population);
  double residual_population() const noexcept { return residual_; }

 private:
  double residual_;
};

class NormDrift : public Error {
 public:
  explicit NormDrift(double deviation);
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

// Configuration file problems. `field()` names the offending key.
class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace darkspec

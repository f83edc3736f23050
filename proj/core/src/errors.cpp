#include "darkspec/errors.hpp"

#include <cstdio>

namespace darkspec {
namespace {

std::string fmt_double(const char* prefix, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s%.17g", prefix, v);
  return buf;
}

}  // namespace

PoleAtBandEdge::PoleAtBandEdge(double delta_lambda)
    : Error(fmt_double("kernel pole at the band edge, delta_lambda = ", delta_lambda)),
      delta_lambda_(delta_lambda) {}

PoleAtDefect::PoleAtDefect(double delta_lambda)
    : Error(fmt_double("kernel pole at the defect mode, delta_lambda = ", delta_lambda)),
      delta_lambda_(delta_lambda) {}

NonPositiveTau::NonPositiveTau(double tau)
    : Error(fmt_double("memory kernel requires tau > 0, got ", tau)) {}

DegenerateDenominator::DegenerateDenominator(double delta_lambda)
    : Error(fmt_double("spectrum denominator vanishes at delta_lambda = ", delta_lambda)),
      delta_lambda_(delta_lambda) {}

StepTooLarge::StepTooLarge(double dt, double change)
    : Error(fmt_double("halving the step changes the trajectory by ", change) +
            fmt_double(" at dt = ", dt)),
      change_(change) {}

TruncationWarning::TruncationWarning(double residual_population)
    : Error(fmt_double("excited population left at the horizon: ", residual_population)),
      residual_(residual_population) {}

NormDrift::NormDrift(double deviation)
    : Error(fmt_double("norm drifted from unity by ", deviation)), deviation_(deviation) {}

ValidationError::ValidationError(std::string field, const std::string& what)
    : Error(field + ": " + what), field_(std::move(field)) {}

}  // namespace darkspec

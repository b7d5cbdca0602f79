#pragma once

#include <functional>
#include <vector>

#include "lookback/spine.hpp"

namespace lookback {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_splits = 2000;  // adaptive interval budget per panel
};

/// Adaptive Gauss-Kronrod 7-15 on a finite interval.
/// Throws AccuracyError when the split budget is exhausted above tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

struct SlaIntegralOptions {
  QuadratureOptions quad;
  double rel_tol = 1e-10;         // target for the full improper integral
  double divergence_delta = 1e-6;  // F(y)/y level that flags divergence
  double divergence_scan_start = 1e6;  // decade from which the rule applies
  int max_decades = 400;
};

/// integral over [1, inf) of F(y) / y^2.
///
/// Integrates decade by decade with breakpoint-aware panels and bounds the
/// remaining tail geometrically from the observed decade decay. Returns
/// +infinity when F(y)/y stays above divergence_delta across three successive
/// decades beyond the scan start (a pragmatic divergence rule; slowly
/// divergent inputs below the delta can be missed). Throws AccuracyError when
/// neither convergence nor divergence can be certified within the decade
/// budget.
double sla_integral(const std::function<double(double)>& f,
                    const SlaIntegralOptions& opts = {},
                    const std::vector<double>& breakpoints = {});

/// Uses the exact closed-form integral when the view carries one; otherwise
/// falls back to quadrature with the view's breakpoints.
double sla_integral(const ScaledAsla& f, const SlaIntegralOptions& opts = {});

/// Quadrature route even when a closed form exists (cross-checks).
double sla_integral_numeric(const ScaledAsla& f,
                            const SlaIntegralOptions& opts = {});

}  // namespace lookback

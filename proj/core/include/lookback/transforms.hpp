#pragma once

#include <functional>
#include <vector>

#include "lookback/measure.hpp"
#include "lookback/spine.hpp"

namespace lookback {

// The four object families (measure, spine, scaled ASLA, ALA) are pairwise
// connected by bijections; on discrete measures and piecewise-linear spines
// every arrow below is exact, and round trips recover the input to 1e-12.

/// F(y) = sum of u_i * m_i over atoms with u_i <= y.
StepFunction measure_to_asla(const DiscreteMeasure& p);

/// Inverse: atoms at jump locations with mass = (jump height) / location;
/// mass at infinity is whatever the atoms leave unassigned. Throws
/// NotAnSlaError when the implied atom masses exceed 1 + 1e-9.
DiscreteMeasure asla_to_measure(const StepFunction& f);

/// Spine F(x) = 1 + integral over [1,x] of the tail; piecewise linear with
/// knots at atom locations, terminal slope = mass at infinity, and segment
/// slopes that are exactly the measure's suffix sums.
Spine measure_to_spine(const DiscreteMeasure& p);

/// Inverse for piecewise-linear spines: atoms at slope-break knots with mass
/// equal to the slope drop, atom at 1 with mass 1 - (first slope), mass at
/// infinity = terminal slope. Throws DomainError for analytic spines
/// (closed-form families discretize through Adjuster::to_discrete).
DiscreteMeasure spine_to_measure(const Spine& s);

/// The spine's right-derivative evaluator; equals the measure tail.
TailFunction spine_to_tail(const Spine& s);

Ala spine_to_ala(Spine s);
Spine ala_to_spine(const Ala& a);

/// F'(x_star) = A(x_star, 0); for piecewise-linear spines this is an exact
/// step function with jumps at the knots (the Legendre values of the spine).
ScaledAsla ala_to_asla(const Ala& a);

/// Direct measure form A(x_star, x) = partial first moment + x * tail.
/// Must agree with spine_to_ala(measure_to_spine(p)) pointwise to 1e-12.
Ala measure_to_ala(const DiscreteMeasure& p);

/// Running supremum F*(y) = sup of F over [grid.front(), y], tabulated on the
/// grid as a right-continuous step function. Combined with the integral
/// criterion this extends the adjuster test to non-monotone functions.
StepFunction running_sup_envelope(const std::function<double(double)>& f,
                                  const std::vector<double>& grid);
StepFunction running_sup_envelope(const std::vector<double>& grid,
                                  const std::vector<double>& values);

}  // namespace lookback

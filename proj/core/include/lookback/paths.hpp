#pragma once

#include <cstdint>
#include <vector>

#include "lookback/strategy.hpp"

namespace lookback {
namespace paths {

/// Multiplicative ramp: x0, x0*f, x0*f^2, ... (steps entries after x0).
PricePath monotone_ramp(double x0, double factor, int steps);

/// Ramp up to `peak` over steps_up steps, then straight down to crash_to
/// over steps_down steps.
PricePath spike_crash(double x0, double peak, int steps_up, int steps_down,
                      double crash_to = 0.0);

/// Oscillates between lo_factor*x0 and a rising sequence of highs; each tooth
/// makes a fresh record then retraces.
PricePath sawtooth(double x0, double lo_factor, double first_high,
                   double high_growth, int teeth);

/// Visits 1 = x0, then each level in `levels` (ascending) exactly, dipping by
/// `dip` after each record. Hitting records exactly at a discrete adjuster's
/// atoms makes the stronger guarantee bind with equality.
PricePath record_walk(const std::vector<double>& levels, double dip = 0.0);

/// Multiplicative random walk with step ratios uniform in [0.5, 2].
PricePath random_multiplicative(double x0, int steps, std::uint64_t seed);

/// The deterministic adversarial library used by guarantee tests.
std::vector<PricePath> adversarial_library(double x0 = 1.0);

}  // namespace paths
}  // namespace lookback

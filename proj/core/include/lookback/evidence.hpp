#pragma once

#include <functional>
#include <vector>

#include "lookback/adjuster.hpp"

namespace lookback {

/// A Sceptic's capital trajectory: starts at 1, entries in [0, +inf].
/// Infinity is an explicit sentinel (std::numeric_limits infinity) with the
/// usual total order; arithmetic never touches it, the calibrator branches.
struct EvidenceStream {
  std::vector<double> capitals;  // capitals[0] must equal 1
};

struct CalibratedRecord {
  std::uint64_t t = 0;
  double capital = 0.0;      // input stream value
  double running_max = 0.0;  // running max of the input
  double position = 0.0;     // stake carried into this step
  double calibrated = 0.0;   // Rival capital K'
  double floor = 0.0;        // c * K_t + F(K*_t)
};

struct CalibratedStream {
  std::vector<CalibratedRecord> records;
  bool infinite_branch = false;  // stream hit +inf while the position was live
  bool frozen = false;           // stream hit +inf with a zero position
};

/// Treats the capital stream as the traded security and runs the hedging
/// strategy of the cash-mixed adjuster, guaranteeing at every step
///   K'_t >= c * K_t + (1-c) * F_inner(K*_t).
/// On the first infinite entry: a live position makes K' infinite from then
/// on; a zero position (possible only when c = 0 and the adjuster's support
/// is exhausted) freezes K' at a level already at least the ASLA limit.
CalibratedStream calibrate_stream(const Adjuster& adjuster, double cash,
                                  const EvidenceStream& stream);

/// Rival's move transform: lifts the strategy position p_t to the bet
/// x -> K'_prev + p_t (f_t(x) - K_prev). Requires p_t in [0, 1] and
/// K'_prev >= p_t * K_prev so the bet stays nonnegative.
std::function<double(double)> bet_transform(
    const std::function<double(double)>& f_t, double k_prev,
    double k_prime_prev, double p_t);

}  // namespace lookback

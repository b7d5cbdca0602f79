#pragma once

#include <cstdint>
#include <vector>

#include "lookback/adjuster.hpp"

namespace lookback {

/// A price trajectory; prices[0] is the initial price X0 > 0, later entries
/// are Market's moves, any value in [0, inf). A zero price is legal and not
/// absorbing.
struct PricePath {
  std::vector<double> prices;

  double x0() const { return prices.front(); }
  std::size_t steps() const { return prices.empty() ? 0 : prices.size() - 1; }
};

/// Engine state in normalized coordinates (prices divided by X0, unit start
/// capital). `position` is the stake announced for the NEXT step, i.e. the
/// adjuster tail at the current running max.
struct StrategyState {
  double y = 1.0;       // current normalized price
  double y_star = 1.0;  // running max of y
  double capital = 1.0;
  double position = 0.0;
};

/// One audited step. Raw columns refer to the input price scale; the
/// normalized twins are kept so the self-financing identity can be re-checked
/// exactly from the trail. `position` is the stake that produced this step's
/// capital change (announced before the price moved).
struct CapitalRecord {
  std::uint64_t t = 0;
  double price = 0.0;
  double running_max = 0.0;
  double position = 0.0;
  double capital = 0.0;
  double ala_floor = 0.0;
  double strong_floor = 0.0;
  double price_norm = 0.0;
  double capital_norm = 0.0;
};

struct FloorPair {
  double ala_floor;     // F(x_star, x), tangent route through the spine
  double strong_floor;  // F'(x_star) + T(x_star) * x, measure route
};

/// Number of units held at running max x_star: the measure tail, which equals
/// the spine's right derivative for every representation.
double position(const Adjuster& adjuster, double x_star);

/// Both guarantee floors at (x_star, x), 1 <= x_star, 0 <= x <= x_star.
/// The two routes are algebraically identical and serve as mutual checks.
FloorPair floor_values(const Adjuster& adjuster, double x_star, double x);

/// Fresh state at y = 1 with the initial position announced.
StrategyState engine_start(const Adjuster& adjuster);

/// Protocol update: capital += position * (new_y - y); running max and the
/// next position refresh afterwards. Deterministic and pure.
StrategyState engine_step(const Adjuster& adjuster, const StrategyState& s,
                          double new_y);

/// Runs the whole path, trading on normalized prices with unit capital and
/// scaling the reported capital/floors by start_capital. The t = 0 record
/// carries the initial state.
std::vector<CapitalRecord> run_path(const Adjuster& adjuster,
                                    const PricePath& path,
                                    double start_capital = 1.0);

}  // namespace lookback

#include "lookback/strategy.hpp"

#include <algorithm>

#include "lookback/errors.hpp"

namespace lookback {

double position(const Adjuster& adjuster, double x_star) {
  if (!(x_star >= 1.0)) throw DomainError("position: x_star must be >= 1");
  return adjuster.tail(x_star);
}

FloorPair floor_values(const Adjuster& adjuster, double x_star, double x) {
  if (!(x_star >= 1.0))
    throw DomainError("floor_values: x_star must be >= 1");
  if (!(x >= 0.0) || x > x_star)
    throw DomainError("floor_values: x must lie in [0, x_star]");
  double spine = adjuster.spine_value(x_star);
  double tail = adjuster.tail(x_star);
  return {spine + tail * (x - x_star), adjuster.asla_value(x_star) + tail * x};
}

StrategyState engine_start(const Adjuster& adjuster) {
  StrategyState s;
  s.position = adjuster.tail(1.0);
  return s;
}

StrategyState engine_step(const Adjuster& adjuster, const StrategyState& s,
                          double new_y) {
  if (!(new_y >= 0.0)) throw DomainError("engine_step: price must be >= 0");
  StrategyState out;
  out.capital = s.capital + s.position * (new_y - s.y);
  out.y = new_y;
  out.y_star = std::max(s.y_star, new_y);
  out.position =
      out.y_star > s.y_star ? adjuster.tail(out.y_star) : s.position;
  return out;
}

std::vector<CapitalRecord> run_path(const Adjuster& adjuster,
                                    const PricePath& path,
                                    double start_capital) {
  if (path.prices.empty() || !(path.prices.front() > 0.0))
    throw DomainError("run_path: path needs a positive initial price");
  if (!(start_capital > 0.0))
    throw DomainError("run_path: start capital must be positive");
  const double x0 = path.x0();

  std::vector<CapitalRecord> trail;
  trail.reserve(path.prices.size());

  StrategyState s = engine_start(adjuster);
  // floor coefficients at the current running max; refreshed on records only
  double spine_at_max = adjuster.spine_value(1.0);
  double asla_at_max = adjuster.asla_value(1.0);

  auto emit = [&](std::uint64_t t, double price_raw) {
    CapitalRecord r;
    r.t = t;
    r.price = price_raw;
    r.running_max = s.y_star * x0;
    r.position = s.position;
    r.capital = start_capital * s.capital;
    double tail = s.position;  // tail(y_star) by construction
    r.ala_floor =
        start_capital * (spine_at_max + tail * (s.y - s.y_star));
    r.strong_floor = start_capital * (asla_at_max + tail * s.y);
    r.price_norm = s.y;
    r.capital_norm = s.capital;
    trail.push_back(r);
  };

  emit(0, path.prices[0]);
  for (std::size_t t = 1; t < path.prices.size(); ++t) {
    if (!(path.prices[t] >= 0.0))
      throw DomainError("run_path: prices must be nonnegative");
    double prev_max = s.y_star;
    double applied_position = s.position;
    s = engine_step(adjuster, s, path.prices[t] / x0);
    if (s.y_star > prev_max) {
      spine_at_max = adjuster.spine_value(s.y_star);
      asla_at_max = adjuster.asla_value(s.y_star);
    }
    emit(t, path.prices[t]);
    trail.back().position = applied_position;
  }
  return trail;
}

}  // namespace lookback

#include "lookback/paths.hpp"

#include <cmath>

#include "lookback/rng.hpp"

namespace lookback {
namespace paths {

PricePath monotone_ramp(double x0, double factor, int steps) {
  PricePath p;
  p.prices.reserve(steps + 1);
  double x = x0;
  p.prices.push_back(x);
  for (int i = 0; i < steps; ++i) {
    x *= factor;
    p.prices.push_back(x);
  }
  return p;
}

PricePath spike_crash(double x0, double peak, int steps_up, int steps_down,
                      double crash_to) {
  PricePath p;
  double up = std::pow(peak / x0, 1.0 / steps_up);
  double x = x0;
  p.prices.push_back(x);
  for (int i = 0; i < steps_up; ++i) {
    x = (i + 1 == steps_up) ? peak : x * up;
    p.prices.push_back(x);
  }
  for (int i = 1; i <= steps_down; ++i) {
    double frac = static_cast<double>(i) / steps_down;
    p.prices.push_back(peak + frac * (crash_to - peak));
  }
  return p;
}

PricePath sawtooth(double x0, double lo_factor, double first_high,
                   double high_growth, int teeth) {
  PricePath p;
  p.prices.push_back(x0);
  double high = first_high;
  for (int i = 0; i < teeth; ++i) {
    p.prices.push_back(high);
    p.prices.push_back(x0 * lo_factor);
    high *= high_growth;
  }
  p.prices.push_back(high);
  return p;
}

PricePath record_walk(const std::vector<double>& levels, double dip) {
  PricePath p;
  p.prices.push_back(1.0);
  for (double u : levels) {
    p.prices.push_back(u);
    if (dip > 0.0 && dip < u) p.prices.push_back(u - dip);
  }
  return p;
}

PricePath random_multiplicative(double x0, int steps, std::uint64_t seed) {
  Rng rng(seed);
  PricePath p;
  p.prices.reserve(steps + 1);
  double x = x0;
  p.prices.push_back(x);
  for (int i = 0; i < steps; ++i) {
    x *= rng.uniform(0.5, 2.0);
    p.prices.push_back(x);
  }
  return p;
}

std::vector<PricePath> adversarial_library(double x0) {
  std::vector<PricePath> lib;
  lib.push_back(monotone_ramp(x0, 1.05, 200));
  lib.push_back(monotone_ramp(x0, 1.0, 50));  // constant path
  lib.push_back(spike_crash(x0, 10.0 * x0, 40, 40, 0.0));
  lib.push_back(spike_crash(x0, 1000.0 * x0, 60, 10, 0.25 * x0));
  lib.push_back(sawtooth(x0, 0.5, 2.0 * x0, 1.5, 12));
  // records creeping up in small increments, then total crash
  {
    PricePath p = monotone_ramp(x0, 1.002, 800);
    p.prices.push_back(0.0);
    lib.push_back(p);
  }
  // immediate drop to zero and recovery
  {
    PricePath p;
    p.prices = {x0, 0.0, 0.5 * x0, 0.0, 2.0 * x0, 4.0 * x0, 0.0};
    lib.push_back(p);
  }
  return lib;
}

}  // namespace paths
}  // namespace lookback

#pragma once

#include <cstdint>
#include <functional>

#include "lookback/adjuster.hpp"

namespace lookback {

/// Fair random walk started at 1 with increments of +-1/N, absorbed at 0.
/// The distribution of its eventual maximum is known exactly via the
/// gambler's-ruin identity: P(max >= k/N) = N/k for k >= N.
struct WalkSpec {
  std::int64_t n;  // step denominator, >= 1
  std::int64_t m;  // top tracked level, in units of 1/N; m >= n

  WalkSpec(std::int64_t n_, std::int64_t m_);
};

/// Exact law of the walk's maximum on the lattice {n/N, ..., m/N} with a tail
/// bucket at the cap. Masses are the exact rationals N/k - N/(k+1).
class MaxLaw {
 public:
  explicit MaxLaw(WalkSpec spec) : spec_(spec) {}

  /// P(max = k/n) for k in [n, m); exact.
  double mass(std::int64_t k) const;
  /// P(max >= k/n) = n/k; exact.
  double tail(std::int64_t k) const;
  /// P(max >= m/n): the cap bucket, n/m.
  double cap_mass() const { return tail(spec_.m); }

  const WalkSpec& spec() const { return spec_; }

 private:
  WalkSpec spec_;
};

MaxLaw max_law(WalkSpec spec);

/// Certified bracket around the expected value of F at the walk's maximum.
struct ExpectationInterval {
  double lo;
  double hi;
  double midpoint() const { return 0.5 * (lo + hi); }
};

/// Sum of F(k/n) * mass(k) over the lattice plus a bracketed cap bucket:
/// the low end evaluates F at the cap (F increasing), the high end uses the
/// supplied bound on the remainder integral of F(y)/y^2 past (m-1)/n, which
/// dominates the lattice tail for increasing F. Without a bound the high end
/// is +inf.
ExpectationInterval expected_payoff(
    const std::function<double(double)>& f, WalkSpec spec,
    const std::function<double(double)>& tail_integral_bound = {});

/// Convenience overload pulling the evaluator and analytic tail from the
/// adjuster's ASLA view.
ExpectationInterval expected_payoff(const Adjuster& adjuster, WalkSpec spec);

struct SupermartingaleReport {
  std::uint64_t seed = 0;
  int n_paths = 0;
  int horizon = 0;
  double mean_terminal = 0.0;
  double standard_error = 0.0;
  bool mean_ok = false;          // mean <= 1 + 3 SE
  int floor_violations = 0;      // per-path guarantee breaches
  std::uint64_t first_bad_seed = 0;  // derived seed of the first bad path
};

/// Runs the trading strategy over simulated walks; terminal capital must
/// average at most 1 within Monte Carlo error, and the per-step guarantee
/// floors must hold on every path.
SupermartingaleReport supermartingale_check(const Adjuster& adjuster,
                                            WalkSpec spec, int n_paths,
                                            std::uint64_t seed,
                                            int horizon = 0);

}  // namespace lookback

#include "lookback/walk_oracle.hpp"

#include <cmath>
#include <limits>

#include "lookback/errors.hpp"
#include "lookback/rng.hpp"
#include "lookback/strategy.hpp"

namespace lookback {

WalkSpec::WalkSpec(std::int64_t n_, std::int64_t m_) : n(n_), m(m_) {
  if (n < 1) throw DomainError("WalkSpec: n must be >= 1");
  if (m < n) throw DomainError("WalkSpec: m must be >= n");
}

double MaxLaw::mass(std::int64_t k) const {
  if (k < spec_.n || k >= spec_.m)
    throw DomainError("MaxLaw::mass: k outside [n, m)");
  // N/k - N/(k+1) = N / (k (k+1))
  return static_cast<double>(spec_.n) /
         (static_cast<double>(k) * static_cast<double>(k + 1));
}

double MaxLaw::tail(std::int64_t k) const {
  if (k < spec_.n) return 1.0;
  return static_cast<double>(spec_.n) / static_cast<double>(k);
}

MaxLaw max_law(WalkSpec spec) { return MaxLaw(spec); }

ExpectationInterval expected_payoff(
    const std::function<double(double)>& f, WalkSpec spec,
    const std::function<double(double)>& tail_integral_bound) {
  MaxLaw law = max_law(spec);
  const double n = static_cast<double>(spec.n);
  double sum = 0.0;
  // Kahan summation: the m = 1e7-style lattices add 1e7 tiny terms
  double comp = 0.0;
  for (std::int64_t k = spec.n; k < spec.m; ++k) {
    double term = f(static_cast<double>(k) / n) * law.mass(k);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  double cap = static_cast<double>(spec.m) / n;
  ExpectationInterval out;
  out.lo = sum + f(cap) * law.cap_mass();
  if (tail_integral_bound) {
    // for increasing F the lattice tail sum is dominated by the integral of
    // F(y)/y^2 from one lattice step below the cap
    double from = static_cast<double>(spec.m - 1) / n;
    out.hi = sum + tail_integral_bound(from);
  } else {
    out.hi = std::numeric_limits<double>::infinity();
  }
  if (out.hi < out.lo) out.hi = out.lo;  // guard against tiny bound crossings
  return out;
}

ExpectationInterval expected_payoff(const Adjuster& adjuster, WalkSpec spec) {
  ScaledAsla view = adjuster.asla();
  auto fn = view.as_function();
  return expected_payoff(fn, spec, view.tail_integral());
}

SupermartingaleReport supermartingale_check(const Adjuster& adjuster,
                                            WalkSpec spec, int n_paths,
                                            std::uint64_t seed, int horizon) {
  if (n_paths < 1) throw DomainError("supermartingale_check: need paths");
  if (horizon <= 0) {
    // long enough for absorption to matter at this step size
    horizon = static_cast<int>(
        std::min<std::int64_t>(spec.n * spec.n * 4, 200000));
  }
  SupermartingaleReport report;
  report.seed = seed;
  report.n_paths = n_paths;
  report.horizon = horizon;

  const double n = static_cast<double>(spec.n);
  double sum = 0.0, sum_sq = 0.0;
  for (int p = 0; p < n_paths; ++p) {
    std::uint64_t path_seed = derive_seed(seed, static_cast<std::uint64_t>(p));
    Rng rng(path_seed);
    StrategyState state = engine_start(adjuster);
    std::int64_t level = spec.n;  // price = level / n, starts at 1
    double asla_at_max = adjuster.asla_value(1.0);  // refreshed on records
    bool ok = true;
    for (int t = 0; t < horizon && level > 0; ++t) {
      level += rng.flip() ? 1 : -1;
      double prev_max = state.y_star;
      state = engine_step(adjuster, state, static_cast<double>(level) / n);
      if (state.y_star > prev_max) asla_at_max = adjuster.asla_value(state.y_star);
      double floor = asla_at_max + state.position * state.y;
      if (state.capital < floor - 1e-9 * std::max(1.0, state.capital))
        ok = false;
    }
    if (!ok) {
      if (report.floor_violations == 0) report.first_bad_seed = path_seed;
      ++report.floor_violations;
    }
    sum += state.capital;
    sum_sq += state.capital * state.capital;
  }
  report.mean_terminal = sum / n_paths;
  double var =
      std::max(0.0, sum_sq / n_paths - report.mean_terminal * report.mean_terminal);
  report.standard_error = std::sqrt(var / n_paths);
  report.mean_ok =
      report.mean_terminal <= 1.0 + 3.0 * report.standard_error + 1e-12;
  return report;
}

}  // namespace lookback

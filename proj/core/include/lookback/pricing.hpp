#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "lookback/piecewise_linear.hpp"
#include "lookback/quadrature.hpp"

namespace lookback {

// ---------------------------------------------------------------------------
// Simple payoffs: increasing nonnegative G of the running max.
// ---------------------------------------------------------------------------

struct ConstantPayoff {
  double k;
};
/// Pays scale * u once the running max reaches u; replicated exactly by
/// holding scale units and selling at u.
struct ThresholdCallPayoff {
  double u;
  double scale = 1.0;
};
/// min(x, cap).
struct CappedPayoff {
  double cap;
};
/// scale * x^beta with beta < 1 (beta >= 1 has infinite upper price
/// everywhere and is rejected at construction).
struct PowerLawPayoff {
  double beta;
  double scale = 1.0;
};
/// Increasing tabulated payoff, linear between grid points; extended flat or
/// linearly (with the last segment's slope) beyond the grid, flat to the left.
struct TabulatedPayoff {
  std::vector<double> grid;
  std::vector<double> values;
  bool linear_extension = false;
};
struct FixedStrikePayoff;  // inner((x - strike)^+)

class SimplePayoff {
 public:
  using Variant =
      std::variant<ConstantPayoff, ThresholdCallPayoff, CappedPayoff,
                   PowerLawPayoff, TabulatedPayoff, FixedStrikePayoff>;

  static SimplePayoff constant(double k);
  static SimplePayoff threshold_call(double u, double scale = 1.0);
  static SimplePayoff capped(double cap);
  static SimplePayoff power_law(double beta, double scale = 1.0);
  static SimplePayoff tabulated(std::vector<double> grid,
                                std::vector<double> values,
                                bool linear_extension = false);
  static SimplePayoff fixed_strike(SimplePayoff inner, double strike);

  /// G(x) on [0, inf); increasing and nonnegative.
  double operator()(double x) const;

  /// Exact remainder integral of G(x)/x^2 over [y0, inf); +inf when the
  /// upper price diverges. This single closed form powers every price below.
  double tail_integral(double y0) const;

  /// Whether the defining integral diverges (payoff grows at least linearly).
  bool diverges() const;

  std::vector<double> breakpoints() const;
  const Variant& variant() const;

 private:
  explicit SimplePayoff(Variant v);
  std::shared_ptr<const Variant> variant_;
};

struct FixedStrikePayoff {
  SimplePayoff inner;
  double strike;
};

inline const SimplePayoff::Variant& SimplePayoff::variant() const {
  return *variant_;
}

// ---------------------------------------------------------------------------
// General payoffs F(x_star, x) on {x_star >= x0, 0 <= x <= x_star}.
// ---------------------------------------------------------------------------

/// Values on an x_star grid crossed with relative coordinates t = x / x_star
/// in [0, 1]; bilinear inside cells, clamped outside the x_star range.
struct Tabulated2d {
  std::vector<double> xstar_grid;  // strictly increasing, >= 0
  std::vector<double> rel_grid;    // strictly increasing within [0, 1]
  std::vector<std::vector<double>> values;  // [i][j] = F at (xstar_i, t_j)
};

class GeneralPayoff {
 public:
  /// F(x_star, x) = G(x_star); the payoff ignores the current price.
  static GeneralPayoff simple_lift(SimplePayoff g);
  /// F(x_star, x) = G(x_star - x): the drawdown put.
  static GeneralPayoff floating_strike_put(SimplePayoff g);
  static GeneralPayoff tabulated(Tabulated2d t);
  /// Black-box payoff; the solver falls back to sampled sups and a grid
  /// growth heuristic for divergence.
  static GeneralPayoff custom(std::function<double(double, double)> f);

  double value(double x_star, double x) const;

  /// sup of F(x_star, x) over x_star in [max(lo, x), hi] at fixed x.
  double sup_over_xstar(double lo, double hi, double x) const;

  /// Additional x-coordinates worth constraining on a segment [lo, hi]
  /// (payoff kinks); {0, lo, hi} are always included by the solver.
  std::vector<double> extra_x_samples(double lo, double hi) const;

  /// Analytic divergence certificate where available.
  std::optional<bool> diverges() const;

  bool is_simple_lift() const;
  bool is_floating_strike() const;

 private:
  struct Impl;
  explicit GeneralPayoff(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------------------
// Results and operations.
// ---------------------------------------------------------------------------

struct PriceResult {
  double value = 0.0;  // +inf when no superhedge exists at finite cost
  /// Majorant H on [x0, inf): value and right-derivative (= position rule).
  /// Exact closed forms for the simple prices, the solved piecewise-linear
  /// majorant for general ones. Empty when value is infinite.
  std::function<double(double)> hedge_value;
  std::function<double(double)> hedge_slope;
  PiecewiseLinear hedge_knots;  // sampled representation for serialization
  int grid_n = 0;
  double residual = 0.0;  // refinement disagreement / constraint residual
};

/// Upper price x0 * integral of G(x)/x^2 over [x0, inf); closed form through
/// the payoff's tail_integral. The hedge H(x) = x * tail_integral(x) carries
/// the position rule H'.
PriceResult price_simple(const SimplePayoff& g, double x0);

/// Price at an intermediate state (running max xstar_s, price x_s > 0):
/// x_s * integral of G(max(xstar_s, x)) x^-2 over [x_s, inf).
PriceResult price_at_time(const SimplePayoff& g, double x_s, double xstar_s);

/// American payoff c * X_t + G(X*_t): c * x0 plus the simple price. The same
/// value prices the maturity-infinity European variant under the usual
/// convention for paths whose price does not converge.
PriceResult price_with_cash(double c, const SimplePayoff& g, double x0);

/// Payoff G((X*_t - strike)^+).
PriceResult price_fixed_strike(const SimplePayoff& g, double strike, double x0);

/// Tangent operator: H(x_star) + H'(x_star) * (x - x_star).
double overline_apply(const PiecewiseLinear& h, double x_star, double x);
double overline_apply(const std::function<double(double)>& value,
                      const std::function<double(double)>& slope,
                      double x_star, double x);

struct MajorantConfig {
  int grid_n = 4096;
  double span = 1e6;              // grid covers [x0, x0 * span], log-spaced
  double fixed_point_tol = 1e-10;
  int max_iterations = 200;
  double feasibility_tol = 1e-9;
  bool refine = true;             // re-solve at 2n and return the finer result
  double refine_tol = 5e-3;       // max relative n-vs-2n disagreement
};

/// Smallest concave increasing H on [x0, inf) whose tangents dominate the
/// payoff, solved on a log grid; the upper price is H(x0) and H' is the
/// hedge's position rule. Returns +inf when no bounded majorant exists.
/// Throws AccuracyError when n-vs-2n refinement disagrees beyond refine_tol.
PriceResult price_general(const GeneralPayoff& payoff, double x0,
                          const MajorantConfig& config = {});

/// Independent oracle: the same constraint system solved as an explicit
/// linear program (dense simplex) over the grid values of H. Grids are
/// limited to 64 knots. Infeasibility is reported as a +inf price.
PriceResult solve_majorant_bruteforce(const GeneralPayoff& payoff, double x0,
                                      int grid_n, double span = 1e6);

/// Max violation of the discretized majorant constraints (domination samples,
/// concavity, monotonicity) by a candidate H on its own knots; <= 0 means
/// feasible. Lets tests certify minimality by local perturbation.
double majorant_residual(const GeneralPayoff& payoff,
                         const PiecewiseLinear& h);

}  // namespace lookback

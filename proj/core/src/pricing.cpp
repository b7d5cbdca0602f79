#include "lookback/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lookback/errors.hpp"

namespace lookback {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SimplePayoff::SimplePayoff(Variant v)
    : variant_(std::make_shared<const Variant>(std::move(v))) {}

SimplePayoff SimplePayoff::constant(double k) {
  if (!(k >= 0.0)) throw DomainError("constant payoff: k must be >= 0");
  return SimplePayoff(ConstantPayoff{k});
}

SimplePayoff SimplePayoff::threshold_call(double u, double scale) {
  if (!(u > 0.0)) throw DomainError("threshold_call: u must be positive");
  if (!(scale >= 0.0)) throw DomainError("threshold_call: scale must be >= 0");
  return SimplePayoff(ThresholdCallPayoff{u, scale});
}

SimplePayoff SimplePayoff::capped(double cap) {
  if (!(cap >= 0.0)) throw DomainError("capped payoff: cap must be >= 0");
  return SimplePayoff(CappedPayoff{cap});
}

SimplePayoff SimplePayoff::power_law(double beta, double scale) {
  if (!(beta >= 0.0) || !(beta < 1.0))
    throw DomainError("power_law payoff: beta must lie in [0, 1)");
  if (!(scale >= 0.0)) throw DomainError("power_law payoff: scale must be >= 0");
  return SimplePayoff(PowerLawPayoff{beta, scale});
}

SimplePayoff SimplePayoff::tabulated(std::vector<double> grid,
                                     std::vector<double> values,
                                     bool linear_extension) {
  if (grid.size() != values.size() || grid.size() < 2)
    throw DomainError("tabulated payoff: need matching grid/values, size >= 2");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && grid[i] <= grid[i - 1])
      throw DomainError("tabulated payoff: grid must strictly increase");
    if (!(values[i] >= 0.0))
      throw DomainError("tabulated payoff: values must be >= 0");
    if (i > 0 && values[i] < values[i - 1])
      throw DomainError("tabulated payoff: values must be increasing");
  }
  if (!(grid.front() > 0.0))
    throw DomainError("tabulated payoff: grid must be positive");
  return SimplePayoff(
      TabulatedPayoff{std::move(grid), std::move(values), linear_extension});
}

SimplePayoff SimplePayoff::fixed_strike(SimplePayoff inner, double strike) {
  if (!(strike > 0.0)) throw DomainError("fixed_strike: strike must be positive");
  return SimplePayoff(FixedStrikePayoff{std::move(inner), strike});
}

double SimplePayoff::operator()(double x) const {
  return std::visit(
      [x](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConstantPayoff>) {
          return p.k;
        } else if constexpr (std::is_same_v<T, ThresholdCallPayoff>) {
          return x >= p.u ? p.scale * p.u : 0.0;
        } else if constexpr (std::is_same_v<T, CappedPayoff>) {
          return std::min(x, p.cap);
        } else if constexpr (std::is_same_v<T, PowerLawPayoff>) {
          return p.scale * std::pow(x, p.beta);
        } else if constexpr (std::is_same_v<T, TabulatedPayoff>) {
          const auto& g = p.grid;
          const auto& v = p.values;
          if (x <= g.front()) return v.front();
          if (x >= g.back()) {
            if (!p.linear_extension) return v.back();
            std::size_t m = g.size();
            double s = (v[m - 1] - v[m - 2]) / (g[m - 1] - g[m - 2]);
            return v.back() + s * (x - g.back());
          }
          auto it = std::upper_bound(g.begin(), g.end(), x);
          std::size_t i = static_cast<std::size_t>(it - g.begin()) - 1;
          double s = (v[i + 1] - v[i]) / (g[i + 1] - g[i]);
          return v[i] + s * (x - g[i]);
        } else {
          return p.inner(std::max(x - p.strike, 0.0));
        }
      },
      *variant_);
}

bool SimplePayoff::diverges() const {
  return std::visit(
      [](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TabulatedPayoff>) {
          if (!p.linear_extension) return false;
          std::size_t m = p.grid.size();
          return p.values[m - 1] > p.values[m - 2];
        } else if constexpr (std::is_same_v<T, FixedStrikePayoff>) {
          return p.inner.diverges();
        } else {
          return false;
        }
      },
      *variant_);
}

std::vector<double> SimplePayoff::breakpoints() const {
  return std::visit(
      [](const auto& p) -> std::vector<double> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ThresholdCallPayoff>) {
          return {p.u};
        } else if constexpr (std::is_same_v<T, CappedPayoff>) {
          return {p.cap};
        } else if constexpr (std::is_same_v<T, TabulatedPayoff>) {
          return p.grid;
        } else if constexpr (std::is_same_v<T, FixedStrikePayoff>) {
          std::vector<double> b{p.strike};
          for (double x : p.inner.breakpoints()) b.push_back(p.strike + x);
          return b;
        } else {
          return {};
        }
      },
      *variant_);
}

double SimplePayoff::tail_integral(double y0) const {
  if (!(y0 > 0.0)) throw DomainError("tail_integral: y0 must be positive");
  return std::visit(
      [y0, this](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConstantPayoff>) {
          return p.k / y0;
        } else if constexpr (std::is_same_v<T, ThresholdCallPayoff>) {
          return p.scale * (p.u / std::max(p.u, y0));
        } else if constexpr (std::is_same_v<T, CappedPayoff>) {
          if (p.cap <= 0.0) return 0.0;
          if (y0 >= p.cap) return p.cap / y0;
          return std::log(p.cap / y0) + 1.0;
        } else if constexpr (std::is_same_v<T, PowerLawPayoff>) {
          return p.scale * std::pow(y0, p.beta - 1.0) / (1.0 - p.beta);
        } else if constexpr (std::is_same_v<T, TabulatedPayoff>) {
          const auto& g = p.grid;
          const auto& v = p.values;
          std::size_t m = g.size();
          double total = 0.0;
          if (y0 < g.front())
            total += v.front() * (1.0 / y0 - 1.0 / g.front());
          for (std::size_t i = 0; i + 1 < m; ++i) {
            if (g[i + 1] <= y0) continue;
            double lo = std::max(g[i], y0), hi = g[i + 1];
            double s = (v[i + 1] - v[i]) / (g[i + 1] - g[i]);
            double a = v[i] - s * g[i];  // G(x) = a + s x on the segment
            total += a * (1.0 / lo - 1.0 / hi) + s * std::log(hi / lo);
          }
          double s_end = p.linear_extension
                             ? (v[m - 1] - v[m - 2]) / (g[m - 1] - g[m - 2])
                             : 0.0;
          if (s_end > 0.0) return kInf;
          total += v.back() / std::max(y0, g.back());
          return total;
        } else {
          // fixed strike: quadrature head plus a bracketed far tail
          if (p.inner.diverges()) return kInf;
          double cut = 1e6 * std::max({y0, p.strike, 1.0});
          const SimplePayoff& self = *this;
          double head = integrate(
              [&self](double x) { return self(x) / x / x; }, y0, cut,
              QuadratureOptions{});
          double hi_tail = p.inner.tail_integral(std::max(cut - p.strike, 1e-300));
          double lo_tail = p.inner.tail_integral(cut);
          return head + 0.5 * (hi_tail + lo_tail);
        }
      },
      *variant_);
}

namespace {

/// Shared assembly: value = x0 * tail, hedge H(x) = x * tail(x) with
/// H'(x) = tail(x) - G(x)/x, sampled onto knots for serialization.
PriceResult assemble_simple_result(std::function<double(double)> g_eval,
                                   std::function<double(double)> g_tail,
                                   double x0) {
  PriceResult out;
  double tail0 = g_tail(x0);
  out.value = x0 * tail0;
  if (std::isinf(out.value)) return out;
  out.hedge_value = [g_tail](double x) { return x * g_tail(x); };
  out.hedge_slope = [g_tail, g_eval](double x) {
    return g_tail(x) - g_eval(x) / x;
  };
  const int n = 129;
  std::vector<double> xs(n), vs(n);
  double ratio = std::pow(1e4, 1.0 / (n - 1));
  double x = x0;
  for (int i = 0; i < n; ++i, x *= ratio) {
    xs[i] = x;
    vs[i] = out.hedge_value(xs[i]);
  }
  out.hedge_knots =
      PiecewiseLinear::from_values(std::move(xs), std::move(vs),
                                   out.hedge_slope(x / ratio));
  out.grid_n = n;
  return out;
}

}  // namespace

PriceResult price_simple(const SimplePayoff& g, double x0) {
  if (!(x0 > 0.0)) throw DomainError("price_simple: x0 must be positive");
  SimplePayoff copy = g;
  return assemble_simple_result([copy](double x) { return copy(x); },
                                [copy](double y) { return copy.tail_integral(y); },
                                x0);
}

PriceResult price_at_time(const SimplePayoff& g, double x_s, double xstar_s) {
  if (!(x_s > 0.0)) throw DomainError("price_at_time: x_s must be positive");
  if (!(xstar_s >= x_s))
    throw DomainError("price_at_time: running max below current price");
  SimplePayoff copy = g;
  auto eval = [copy, xstar_s](double x) { return copy(std::max(xstar_s, x)); };
  auto tail = [copy, xstar_s](double y0) {
    if (y0 >= xstar_s) return copy.tail_integral(y0);
    return copy(xstar_s) * (1.0 / y0 - 1.0 / xstar_s) +
           copy.tail_integral(xstar_s);
  };
  return assemble_simple_result(eval, tail, x_s);
}

PriceResult price_with_cash(double c, const SimplePayoff& g, double x0) {
  if (!(c >= 0.0)) throw DomainError("price_with_cash: c must be >= 0");
  PriceResult base = price_simple(g, x0);
  if (std::isinf(base.value)) return base;
  PriceResult out;
  out.value = c * x0 + base.value;
  auto bv = base.hedge_value;
  auto bs = base.hedge_slope;
  out.hedge_value = [bv, c](double x) { return c * x + bv(x); };
  out.hedge_slope = [bs, c](double x) { return c + bs(x); };
  std::vector<double> xs = base.hedge_knots.knots();
  std::vector<double> vs = base.hedge_knots.values();
  for (std::size_t i = 0; i < xs.size(); ++i) vs[i] += c * xs[i];
  out.hedge_knots = PiecewiseLinear::from_values(
      std::move(xs), std::move(vs), base.hedge_knots.terminal_slope() + c);
  out.grid_n = base.grid_n;
  return out;
}

PriceResult price_fixed_strike(const SimplePayoff& g, double strike,
                               double x0) {
  return price_simple(SimplePayoff::fixed_strike(g, strike), x0);
}

double overline_apply(const PiecewiseLinear& h, double x_star, double x) {
  if (!(x_star >= h.domain_start()))
    throw DomainError("overline_apply: x_star below the function's domain");
  if (!(x >= 0.0) || x > x_star)
    throw DomainError("overline_apply: x must lie in [0, x_star]");
  return h.value(x_star) + h.right_slope(x_star) * (x - x_star);
}

double overline_apply(const std::function<double(double)>& value,
                      const std::function<double(double)>& slope,
                      double x_star, double x) {
  if (!(x >= 0.0) || x > x_star)
    throw DomainError("overline_apply: x must lie in [0, x_star]");
  return value(x_star) + slope(x_star) * (x - x_star);
}

}  // namespace lookback

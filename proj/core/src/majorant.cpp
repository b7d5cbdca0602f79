#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "lookback/envelope.hpp"
#include "lookback/errors.hpp"
#include "lookback/pricing.hpp"
#include "lookback/simplex.hpp"

namespace lookback {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// GeneralPayoff
// ---------------------------------------------------------------------------

struct GeneralPayoff::Impl {
  enum class Kind { SimpleLift, FloatingStrike, Tabulated, Custom };
  Kind kind;
  std::optional<SimplePayoff> g;
  std::optional<Tabulated2d> tab;
  std::function<double(double, double)> fn;

  double value(double xs, double x) const;
  double sup_over_xstar(double lo, double hi, double x) const;
  double tab_value(double xs, double t) const;
};

namespace {

/// Maximum of the bilinear patch along xs at fixed x, over [lo, hi]
/// intersected with the strip where t = x/xs stays inside one rel cell.
/// On such a piece F(xs) = alpha + beta*xs + gamma*x/xs + delta*x, which has
/// at most one interior stationary point.
double tab_sup_piece(const Tabulated2d& t, std::size_t ci, std::size_t cj,
                     double lo, double hi, double x) {
  const auto& gx = t.xstar_grid;
  const auto& gt = t.rel_grid;
  double x1 = gx[ci], x2 = gx[ci + 1];
  double t1 = gt[cj], t2 = gt[cj + 1];
  double f11 = t.values[ci][cj], f12 = t.values[ci][cj + 1];
  double f21 = t.values[ci + 1][cj], f22 = t.values[ci + 1][cj + 1];
  double dx = x2 - x1, dt = t2 - t1;
  // bilinear coefficients in (xs, tt): F = a + b*xs + c*tt + d*xs*tt
  double d = (f11 - f12 - f21 + f22) / (dx * dt);
  double b = (f21 - f11) / dx - d * t1;
  double c = (f12 - f11) / dt - d * x1;
  double a = f11 - b * x1 - c * t1 - d * x1 * t1;
  // with tt = x/xs: F(xs) = (a + d*x) + b*xs + (c*x)/xs
  auto eval = [&](double xs) {
    double tt = xs > 0.0 ? x / xs : t2;
    return a + b * xs + c * tt + d * xs * tt;
  };
  double best = std::max(eval(lo), eval(hi));
  double cc = c * x;
  if (b != 0.0 && cc / b > 0.0) {
    double xs_c = std::sqrt(cc / b);
    if (xs_c > lo && xs_c < hi) best = std::max(best, eval(xs_c));
  }
  return best;
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 80 && (b - a) > 1e-10 * std::max(1.0, std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max({f(a), f(b), f1, f2});
}

}  // namespace

double GeneralPayoff::Impl::tab_value(double xs, double x) const {
  const auto& gx = tab->xstar_grid;
  const auto& gt = tab->rel_grid;
  double xc = std::clamp(xs, gx.front(), gx.back());
  double tt = xs > 0.0 ? std::clamp(x / xs, gt.front(), gt.back()) : gt.front();
  auto locate = [](const std::vector<double>& g, double v) {
    auto it = std::upper_bound(g.begin(), g.end(), v);
    std::size_t i = it == g.begin() ? 0 : static_cast<std::size_t>(it - g.begin()) - 1;
    return std::min(i, g.size() - 2);
  };
  std::size_t i = locate(gx, xc), j = locate(gt, tt);
  double ax = (xc - gx[i]) / (gx[i + 1] - gx[i]);
  double at = (tt - gt[j]) / (gt[j + 1] - gt[j]);
  return (1 - ax) * (1 - at) * tab->values[i][j] +
         (1 - ax) * at * tab->values[i][j + 1] +
         ax * (1 - at) * tab->values[i + 1][j] +
         ax * at * tab->values[i + 1][j + 1];
}

double GeneralPayoff::Impl::value(double xs, double x) const {
  switch (kind) {
    case Kind::SimpleLift:
      return (*g)(xs);
    case Kind::FloatingStrike:
      return (*g)(std::max(xs - x, 0.0));
    case Kind::Tabulated:
      return tab_value(xs, x);
    case Kind::Custom:
      return fn(xs, x);
  }
  return 0.0;
}

double GeneralPayoff::Impl::sup_over_xstar(double lo, double hi,
                                           double x) const {
  lo = std::max(lo, x);
  if (lo > hi) lo = hi;
  switch (kind) {
    case Kind::SimpleLift:
      return (*g)(hi);  // increasing in the running max
    case Kind::FloatingStrike:
      return (*g)(std::max(hi - x, 0.0));
    case Kind::Tabulated: {
      const auto& gx = tab->xstar_grid;
      const auto& gt = tab->rel_grid;
      // clamped extension: sup over the clamped interval plus the endpoints
      double best = std::max(tab_value(lo, x), tab_value(hi, x));
      double clo = std::clamp(lo, gx.front(), gx.back());
      double chi = std::clamp(hi, gx.front(), gx.back());
      if (clo >= chi) return best;
      for (std::size_t ci = 0; ci + 1 < gx.size(); ++ci) {
        double s1 = std::max(gx[ci], clo), s2 = std::min(gx[ci + 1], chi);
        if (s1 >= s2) continue;
        // split by rel cells crossed by t = x/xs
        for (std::size_t cj = 0; cj + 1 < gt.size(); ++cj) {
          double p1 = s1, p2 = s2;
          if (x > 0.0) {
            // xs range where t in [gt[cj], gt[cj+1]]
            double q1 = gt[cj + 1] > 0.0 ? x / gt[cj + 1] : kInf;
            double q2 = gt[cj] > 0.0 ? x / gt[cj] : kInf;
            p1 = std::max(p1, q1);
            p2 = std::min(p2, q2);
            if (p1 >= p2) continue;
          } else if (cj != 0) {
            continue;  // x == 0 stays in the first rel cell
          }
          best = std::max(best, tab_sup_piece(*tab, ci, cj, p1, p2, x));
        }
      }
      return best;
    }
    case Kind::Custom: {
      if (lo >= hi) return fn(hi, x);
      auto f1 = [this, x](double xs) { return fn(xs, x); };
      return golden_section_max(f1, lo, hi);
    }
  }
  return 0.0;
}

GeneralPayoff::GeneralPayoff(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

GeneralPayoff GeneralPayoff::simple_lift(SimplePayoff g) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::SimpleLift;
  impl->g = std::move(g);
  return GeneralPayoff(impl);
}

GeneralPayoff GeneralPayoff::floating_strike_put(SimplePayoff g) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::FloatingStrike;
  impl->g = std::move(g);
  return GeneralPayoff(impl);
}

GeneralPayoff GeneralPayoff::tabulated(Tabulated2d t) {
  if (t.xstar_grid.size() < 2 || t.rel_grid.size() < 2)
    throw DomainError("tabulated payoff: need at least a 2x2 grid");
  if (t.values.size() != t.xstar_grid.size())
    throw DomainError("tabulated payoff: row count mismatch");
  for (const auto& row : t.values) {
    if (row.size() != t.rel_grid.size())
      throw DomainError("tabulated payoff: column count mismatch");
    for (double v : row)
      if (!(v >= 0.0)) throw DomainError("tabulated payoff: negative value");
  }
  for (std::size_t i = 1; i < t.xstar_grid.size(); ++i)
    if (t.xstar_grid[i] <= t.xstar_grid[i - 1])
      throw DomainError("tabulated payoff: xstar grid must increase");
  for (std::size_t j = 1; j < t.rel_grid.size(); ++j)
    if (t.rel_grid[j] <= t.rel_grid[j - 1])
      throw DomainError("tabulated payoff: rel grid must increase");
  if (t.rel_grid.front() < 0.0 || t.rel_grid.back() > 1.0)
    throw DomainError("tabulated payoff: rel grid must lie in [0, 1]");
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::Tabulated;
  impl->tab = std::move(t);
  return GeneralPayoff(impl);
}

GeneralPayoff GeneralPayoff::custom(std::function<double(double, double)> f) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Impl::Kind::Custom;
  impl->fn = std::move(f);
  return GeneralPayoff(impl);
}

double GeneralPayoff::value(double x_star, double x) const {
  return impl_->value(x_star, x);
}

double GeneralPayoff::sup_over_xstar(double lo, double hi, double x) const {
  return impl_->sup_over_xstar(lo, hi, x);
}

std::vector<double> GeneralPayoff::extra_x_samples(double lo,
                                                   double hi) const {
  std::vector<double> out;
  switch (impl_->kind) {
    case Impl::Kind::SimpleLift:
      break;  // constant in x
    case Impl::Kind::FloatingStrike:
      for (double b : impl_->g->breakpoints()) {
        double x = hi - b;
        if (x > 0.0 && x < hi) out.push_back(x);
      }
      break;
    case Impl::Kind::Tabulated:
      for (double t : impl_->tab->rel_grid) {
        if (t * hi > 0.0 && t * hi < hi) out.push_back(t * hi);
        if (t * lo > 0.0 && t * lo < lo) out.push_back(t * lo);
      }
      break;
    case Impl::Kind::Custom:
      for (int k = 1; k < 8; ++k) out.push_back(lo * k / 8.0);
      break;
  }
  return out;
}

std::optional<bool> GeneralPayoff::diverges() const {
  switch (impl_->kind) {
    case Impl::Kind::SimpleLift:
    case Impl::Kind::FloatingStrike:
      return impl_->g->diverges();
    case Impl::Kind::Tabulated:
      return false;  // clamped extension keeps the payoff bounded
    case Impl::Kind::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

bool GeneralPayoff::is_simple_lift() const {
  return impl_->kind == Impl::Kind::SimpleLift;
}
bool GeneralPayoff::is_floating_strike() const {
  return impl_->kind == Impl::Kind::FloatingStrike;
}

// ---------------------------------------------------------------------------
// Majorant solver
// ---------------------------------------------------------------------------

namespace {

struct SegmentConstraints {
  // per sample: x coordinate and the payoff sup it must be dominated at
  std::vector<double> x;
  std::vector<double> bound;
};

/// Samples for segment j in [knots[j], knots[j+1]] (j < n-1). The virtual
/// tail segment beyond the last knot shares the final slope, so its samples
/// (with x_star clamped to the last knot) are merged into segment n-2.
std::vector<SegmentConstraints> build_constraints(
    const GeneralPayoff& payoff, const std::vector<double>& knots) {
  std::size_t n = knots.size();
  std::vector<SegmentConstraints> segs(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double lo = knots[j], hi = knots[j + 1];
    // Samples are restricted to x <= lo plus the right knot. Constraints at
    // interior x would couple neighbouring H values with positive weights on
    // both, which destroys the min-stability that lets the descent solver
    // reach the same optimum as the LP oracle; the discretization is the
    // same for both routes either way.
    std::set<double> xs{0.0, lo, hi};
    for (double x : payoff.extra_x_samples(lo, hi))
      if (x >= 0.0 && x <= lo) xs.insert(x);
    if (j + 2 == n) {
      // tail: payoff clamped at the last knot in x_star
      for (double x : payoff.extra_x_samples(hi, hi))
        if (x >= 0.0 && x <= lo) xs.insert(x);
    }
    for (double x : xs) {
      double b = payoff.sup_over_xstar(std::max(x, lo), hi, x);
      if (j + 2 == n)
        b = std::max(b, payoff.sup_over_xstar(hi, hi, std::min(x, hi)));
      segs[j].x.push_back(x);
      segs[j].bound.push_back(b);
    }
  }
  return segs;
}

struct GridSolution {
  std::vector<double> h;
  bool infinite = false;
  double residual = 0.0;
};

/// Divergence heuristics on the sampled bounds: the running sup of the
/// x = 0 bounds must decay relative to x, and the diagonal bounds must not
/// grow superlinearly. Both mirror the integral divergence rule.
bool constraints_look_divergent(const std::vector<double>& knots,
                                const std::vector<SegmentConstraints>& segs) {
  std::size_t n = knots.size();
  auto ratio_at = [&](double frac_decades) -> std::pair<double, double> {
    // (legendre ratio, diagonal ratio) near knots[n-1] / 10^frac_decades
    double target = knots[n - 1] / std::pow(10.0, frac_decades);
    std::size_t j = n - 2;
    while (j > 0 && knots[j] > target) --j;
    double leg = 0.0, diag = 0.0;
    for (std::size_t i = 0; i <= j; ++i) {
      leg = std::max(leg, segs[i].bound.front());  // x = 0 sample is first
      diag = std::max(diag, segs[i].bound.back() / knots[i + 1]);
    }
    return {leg / knots[j + 1], diag};
  };
  auto [leg3, diag3] = ratio_at(3.0);
  auto [leg2, diag2] = ratio_at(2.0);
  auto [leg1, diag1] = ratio_at(1.0);
  auto [leg0, diag0] = ratio_at(0.0);
  const double delta = 1e-6;
  bool leg_divergent = leg0 >= delta && leg0 >= 0.5 * leg1 &&
                       leg1 >= 0.5 * leg2 && leg2 >= 0.5 * leg3;
  bool diag_superlinear = diag0 >= delta && diag0 > 1.5 * diag1 &&
                          diag1 > 1.5 * diag2;
  return leg_divergent || diag_superlinear;
}

/// Largest relative violation of the constraint system by a candidate h
/// (positive means infeasible). Each violation is scaled by the magnitudes
/// entering its constraint, so far-out knots with huge values do not drown
/// the verdict in rounding noise. Slopes are chord slopes; the last segment's
/// slope also rules the virtual tail.
double max_violation(const std::vector<double>& knots,
                     const std::vector<SegmentConstraints>& segs,
                     const std::vector<double>& h) {
  double worst = 0.0;
  std::size_t n = knots.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double slope = (h[j + 1] - h[j]) / (knots[j + 1] - knots[j]);
    for (std::size_t k = 0; k < segs[j].x.size(); ++k) {
      double line = h[j] + slope * (segs[j].x[k] - knots[j]);
      double scale = std::max({1.0, std::abs(segs[j].bound[k]), std::abs(h[j + 1])});
      worst = std::max(worst, (segs[j].bound[k] - line) / scale);
    }
  }
  for (std::size_t j = 0; j + 2 < n; ++j) {
    double s0 = (h[j + 1] - h[j]) / (knots[j + 1] - knots[j]);
    double s1 = (h[j + 2] - h[j + 1]) / (knots[j + 2] - knots[j + 1]);
    worst = std::max(worst, (s1 - s0) / std::max({1.0, std::abs(s0), std::abs(s1)}));
  }
  for (std::size_t j = 0; j + 1 < n; ++j)
    worst = std::max(worst,
                     (h[j] - h[j + 1]) / std::max(1.0, std::abs(h[j])));
  return worst;
}

/// Construct + repair + descend. See DESIGN: the minimal solution of the
/// endpoint-binding system is built in closed form through the segment
/// Legendre values; violated off-endpoint samples raise those values; final
/// descent sweeps pin every knot against its binding constraints.
GridSolution solve_on_grid(const std::vector<double>& knots,
                           const std::vector<SegmentConstraints>& segs,
                           const MajorantConfig& cfg) {
  const std::size_t n = knots.size();
  const std::size_t m = n - 1;  // segments
  GridSolution out;

  // direct value bounds at knots: samples with x at a knot of their segment
  std::vector<double> direct(n, 0.0);
  // Legendre requirements per segment from x = 0 samples
  std::vector<double> ell(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < segs[j].x.size(); ++k) {
      double x = segs[j].x[k], b = segs[j].bound[k];
      if (x == 0.0) ell[j] = std::max(ell[j], b);
      if (x == knots[j]) direct[j] = std::max(direct[j], b);
      if (x == knots[j + 1]) direct[j + 1] = std::max(direct[j + 1], b);
    }
  }

  std::vector<double> big_l(m), slope(m), h(n);
  auto rebuild = [&](double s_term) {
    slope[m - 1] = s_term;
    for (std::size_t j = m - 1; j-- > 0;)
      slope[j] = slope[j + 1] + (big_l[j + 1] - big_l[j]) / knots[j + 1];
    h[n - 1] = big_l[m - 1] + slope[m - 1] * knots[n - 1];
    for (std::size_t j = 0; j < m; ++j) h[j] = big_l[j] + slope[j] * knots[j];
  };

  double s_term = 0.0;
  for (int round = 0; round < cfg.max_iterations; ++round) {
    // running max keeps the Legendre sequence increasing
    double run = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      run = std::max(run, ell[j]);
      big_l[j] = run;
    }
    rebuild(s_term);
    // lift the terminal slope if direct knot bounds still poke through
    double gamma = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      gamma = std::max(gamma, (direct[i] - h[i]) / knots[i]);
    if (gamma > 0.0) {
      s_term += gamma;
      rebuild(s_term);
    }
    // fold any remaining violated samples into the Legendre requirements
    bool changed = false;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < segs[j].x.size(); ++k) {
        double x = segs[j].x[k], b = segs[j].bound[k];
        double line = h[j] + slope[j] * (x - knots[j]);
        if (line < b - 1e-14 * std::max(1.0, b)) {
          double need = b - slope[j] * x;  // L_j >= b - s_j x
          if (need > ell[j]) {
            ell[j] = need;
            changed = true;
          }
        }
      }
    }
    if (!changed) break;
  }

  // descent sweeps: lower each knot onto its binding constraints
  const double scale = std::max(1.0, h[0]);
  auto single_sweeps = [&]() {
    for (int sweep = 0; sweep < cfg.max_iterations; ++sweep) {
      double moved = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double lb = 0.0;
        if (i > 0) lb = std::max(lb, h[i - 1]);  // monotone
        if (i > 0 && i + 1 < n) {
          double d0 = knots[i] - knots[i - 1], d1 = knots[i + 1] - knots[i];
          lb = std::max(lb, (d1 * h[i - 1] + d0 * h[i + 1]) / (d0 + d1));
        }
        if (i < m) {
          // own segment: h_i(1-lam) + h_{i+1} lam >= b with lam < 1
          double delta = knots[i + 1] - knots[i];
          for (std::size_t k = 0; k < segs[i].x.size(); ++k) {
            double lam = (segs[i].x[k] - knots[i]) / delta;
            if (lam >= 1.0) continue;
            lb = std::max(lb,
                          (segs[i].bound[k] - lam * h[i + 1]) / (1.0 - lam));
          }
        }
        if (i > 0) {
          // left segment samples with positive weight on h_i
          double delta = knots[i] - knots[i - 1];
          for (std::size_t k = 0; k < segs[i - 1].x.size(); ++k) {
            double lam = (segs[i - 1].x[k] - knots[i - 1]) / delta;
            if (lam <= 0.0) continue;
            lb = std::max(
                lb, (segs[i - 1].bound[k] - (1.0 - lam) * h[i - 1]) / lam);
          }
        }
        if (lb < h[i]) {
          moved = std::max(moved, h[i] - lb);
          h[i] = lb;
        }
      }
      if (moved < cfg.fixed_point_tol * scale) break;
    }
  };

  // joint moves on adjacent pairs: single-knot descent can pin above the
  // optimum when a binding constraint couples two neighbours; minimizing
  // h_i + h_{i+1} over the exact 2-D section unlocks those edges
  struct HalfPlane {
    double a, b, c;  // a u + b v >= c
  };
  auto pair_sweep = [&]() {
    double moved = 0.0;
    std::vector<HalfPlane> hp;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      hp.clear();
      double du = knots[i + 1] - knots[i];
      if (i > 0) {
        double dl = knots[i] - knots[i - 1];
        for (std::size_t k = 0; k < segs[i - 1].x.size(); ++k) {
          double lam = (segs[i - 1].x[k] - knots[i - 1]) / dl;
          if (lam <= 0.0) continue;  // relaxed by lowering
          hp.push_back({lam, 0.0,
                        segs[i - 1].bound[k] - (1.0 - lam) * h[i - 1]});
        }
        hp.push_back({1.0, 0.0, h[i - 1]});                       // monotone
        hp.push_back({1.0 / dl + 1.0 / du, -1.0 / du, h[i - 1] / dl});
        if (i > 1) {
          double dll = knots[i - 1] - knots[i - 2];
          hp.push_back({-1.0 / dl, 0.0,
                        -h[i - 1] / dl - (h[i - 1] - h[i - 2]) / dll});
        }
      }
      for (std::size_t k = 0; k < segs[i].x.size(); ++k) {
        double lam = (segs[i].x[k] - knots[i]) / du;
        hp.push_back({1.0 - lam, lam, segs[i].bound[k]});
      }
      hp.push_back({-1.0, 1.0, 0.0});  // v >= u
      hp.push_back({1.0, 0.0, 0.0});
      hp.push_back({0.0, 1.0, 0.0});
      if (i + 2 < n) {
        double dr = knots[i + 2] - knots[i + 1];
        for (std::size_t k = 0; k < segs[i + 1].x.size(); ++k) {
          double lam = (segs[i + 1].x[k] - knots[i + 1]) / dr;
          if (lam >= 1.0) continue;
          hp.push_back({0.0, 1.0 - lam, segs[i + 1].bound[k] - lam * h[i + 2]});
        }
        hp.push_back({0.0, -1.0, -h[i + 2]});  // monotone above
        hp.push_back({-1.0 / du, 1.0 / du + 1.0 / dr, h[i + 2] / dr});
        if (i + 3 < n) {
          double drr = knots[i + 3] - knots[i + 2];
          hp.push_back({0.0, -1.0 / dr,
                        (h[i + 3] - h[i + 2]) / drr - h[i + 2] / dr});
        }
      }
      auto feasible = [&](double u, double v) {
        for (const HalfPlane& p : hp)
          if (p.a * u + p.b * v <
              p.c - 1e-11 * std::max(1.0, std::abs(p.c)))
            return false;
        return true;
      };
      double bu = h[i], bv = h[i + 1], best = bu + bv;
      for (std::size_t p = 0; p < hp.size(); ++p) {
        for (std::size_t q = p + 1; q < hp.size(); ++q) {
          double det = hp[p].a * hp[q].b - hp[q].a * hp[p].b;
          if (std::abs(det) < 1e-14) continue;
          double u = (hp[p].c * hp[q].b - hp[q].c * hp[p].b) / det;
          double v = (hp[p].a * hp[q].c - hp[q].a * hp[p].c) / det;
          if (u + v < best - 1e-12 * scale && feasible(u, v)) {
            best = u + v;
            bu = u;
            bv = v;
          }
        }
      }
      if (bu != h[i] || bv != h[i + 1]) {
        moved = std::max(moved, (h[i] - bu) + (h[i + 1] - bv));
        h[i] = bu;
        h[i + 1] = bv;
      }
    }
    return moved;
  };

  single_sweeps();
  for (int round = 0; round < 20; ++round) {
    double moved = pair_sweep();
    if (moved < cfg.fixed_point_tol * scale) break;
    single_sweeps();
  }

  out.h = h;
  out.residual = max_violation(knots, segs, h);
  return out;
}

std::vector<double> log_grid(double x0, double span, int n) {
  std::vector<double> knots(n);
  double step = std::log(span) / (n - 1);
  for (int i = 0; i < n; ++i) knots[i] = x0 * std::exp(i * step);
  knots[0] = x0;
  return knots;
}

PriceResult result_from_grid(const std::vector<double>& knots,
                             const std::vector<double>& h, double residual) {
  PriceResult out;
  out.value = h.front();
  out.grid_n = static_cast<int>(knots.size());
  out.residual = residual;
  std::size_t n = knots.size();
  double terminal = (h[n - 1] - h[n - 2]) / (knots[n - 1] - knots[n - 2]);
  out.hedge_knots = PiecewiseLinear::from_values(knots, h, terminal);
  PiecewiseLinear pw = out.hedge_knots;
  out.hedge_value = [pw](double x) { return pw.value(x); };
  out.hedge_slope = [pw](double x) { return pw.right_slope(x); };
  return out;
}

PriceResult infinite_price() {
  PriceResult out;
  out.value = kInf;
  return out;
}

}  // namespace

PriceResult price_general(const GeneralPayoff& payoff, double x0,
                          const MajorantConfig& config) {
  if (!(x0 > 0.0)) throw DomainError("price_general: x0 must be positive");
  if (config.grid_n < 8) throw DomainError("price_general: grid_n too small");
  auto known = payoff.diverges();
  if (known.has_value() && *known) return infinite_price();

  auto solve_at = [&](int n) {
    std::vector<double> knots = log_grid(x0, config.span, n);
    auto segs = build_constraints(payoff, knots);
    if (!known.has_value() && constraints_look_divergent(knots, segs))
      return std::pair<GridSolution, std::vector<double>>({{}, true, 0.0},
                                                          std::move(knots));
    GridSolution sol = solve_on_grid(knots, segs, config);
    return std::pair<GridSolution, std::vector<double>>(std::move(sol),
                                                        std::move(knots));
  };

  auto [sol, knots] = solve_at(config.grid_n);
  if (sol.infinite) return infinite_price();
  if (sol.residual > config.feasibility_tol)
    throw AccuracyError("price_general: constraint residual above tolerance",
                        sol.residual);
  if (!config.refine) return result_from_grid(knots, sol.h, sol.residual);

  auto [fine, fine_knots] = solve_at(2 * config.grid_n);
  if (fine.infinite) return infinite_price();
  double diff = std::abs(fine.h.front() - sol.h.front());
  if (diff > config.refine_tol * std::max(1.0, std::abs(fine.h.front())))
    throw AccuracyError(
        "price_general: refinement disagreement; grid too coarse", diff);
  if (fine.residual > config.feasibility_tol)
    throw AccuracyError("price_general: constraint residual above tolerance",
                        fine.residual);
  PriceResult out = result_from_grid(fine_knots, fine.h, diff);
  return out;
}

double majorant_residual(const GeneralPayoff& payoff,
                         const PiecewiseLinear& h) {
  auto segs = build_constraints(payoff, h.knots());
  return max_violation(h.knots(), segs, h.values());
}

PriceResult solve_majorant_bruteforce(const GeneralPayoff& payoff, double x0,
                                      int grid_n, double span) {
  if (!(x0 > 0.0))
    throw DomainError("solve_majorant_bruteforce: x0 must be positive");
  if (grid_n < 4 || grid_n > 64)
    throw DomainError("solve_majorant_bruteforce: grid_n must lie in [4, 64]");
  auto known = payoff.diverges();
  if (known.has_value() && *known) return infinite_price();

  std::vector<double> knots = log_grid(x0, span, grid_n);
  auto segs = build_constraints(payoff, knots);
  std::size_t n = knots.size();

  // The program is written over the segment Legendre values L_j (the height
  // of segment j's line at x = 0) plus the terminal slope t, all nonnegative:
  //   slope_j = t + sum_{i>j} (L_i - L_{i-1}) / x_i,
  //   H_i = L_i + slope_i x_i,   line_j(x) = L_j + slope_j x.
  // Monotonicity and concavity of H reduce to L increasing and t >= 0, and
  // every coefficient lands in [0, 1], which keeps the simplex far away from
  // the conditioning trouble the raw H formulation runs into.
  const std::size_t m = n - 1;        // segments
  const std::size_t nv = m + 1;       // L_0..L_{m-1}, t
  std::vector<std::vector<double>> a;
  std::vector<double> b;

  // coefficients of X * slope_j as a linear form over the variables
  auto add_slope_terms = [&](std::vector<double>& row, std::size_t j,
                             double x) {
    row[m] += x;  // terminal slope
    for (std::size_t k = j; k < m; ++k) {
      if (k >= j + 1) row[k] += x / knots[k];
      if (k + 1 <= m - 1) row[k] -= x / knots[k + 1];
    }
  };

  for (std::size_t j = 0; j + 1 < m; ++j) {  // L increasing
    std::vector<double> row(nv, 0.0);
    row[j + 1] = 1.0;
    row[j] = -1.0;
    a.push_back(std::move(row));
    b.push_back(0.0);
  }
  for (std::size_t j = 0; j < m; ++j) {  // domination: L_j + X slope_j >= b
    for (std::size_t k = 0; k < segs[j].x.size(); ++k) {
      std::vector<double> row(nv, 0.0);
      row[j] += 1.0;
      add_slope_terms(row, j, segs[j].x[k]);
      a.push_back(std::move(row));
      b.push_back(segs[j].bound[k]);
    }
  }

  // objective: H_0 = L_0 + slope_0 * x_0
  std::vector<double> c(nv, 0.0);
  c[0] = 1.0;
  add_slope_terms(c, 0, knots[0]);

  LpResult lp = solve_lp_min(c, a, b);
  if (lp.status == LpResult::Status::Infeasible) return infinite_price();
  if (lp.status != LpResult::Status::Optimal)
    throw AccuracyError("solve_majorant_bruteforce: simplex did not converge",
                        0.0);
  // recover H from the optimal (L, t)
  std::vector<double> h(n), slope(m);
  slope[m - 1] = lp.x[m];
  for (std::size_t j = m - 1; j-- > 0;)
    slope[j] = slope[j + 1] + (lp.x[j + 1] - lp.x[j]) / knots[j + 1];
  for (std::size_t i = 0; i < m; ++i) h[i] = lp.x[i] + slope[i] * knots[i];
  h[n - 1] = lp.x[m - 1] + slope[m - 1] * knots[n - 1];
  return result_from_grid(knots, h, max_violation(knots, segs, h));
}

}  // namespace lookback

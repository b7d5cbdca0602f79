#include "lookback/simplex.hpp"
#include <cstdio>
#include <cstdlib>

#include <cmath>
#include <cstddef>
#include <limits>

#include "lookback/errors.hpp"

namespace lookback {
namespace {

constexpr double kEnter = 1e-8;  // reduced-cost threshold (rows normalized)
constexpr double kRatio = 1e-11;  // pivot-element positivity

// Dense tableau with explicit basis bookkeeping. Columns: n structural,
// m slack, m artificial, then RHS.
struct Tableau {
  std::size_t m, n, cols;
  std::vector<double> t;  // (m + 1) x cols, last row = objective
  std::vector<std::size_t> basis;

  double& at(std::size_t r, std::size_t c) { return t[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return t[r * cols + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    double piv = at(pr, pc);
    for (std::size_t c = 0; c < cols; ++c) at(pr, c) /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == pr) continue;
      double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < cols; ++c) at(r, c) -= f * at(pr, c);
    }
    basis[pr] = pc;
  }

  // returns false on unbounded, true when optimal or iteration limit
  bool run(std::size_t allowed_cols, int& iters, int max_iters,
           bool& hit_limit) {
    int since_progress = 0;
    double last_obj = at(m, cols - 1);
    while (iters < max_iters) {
      ++iters;
      bool bland = since_progress > 2000;
      // entering column: most negative reduced cost (Dantzig) or first (Bland)
      std::size_t pc = cols;
      double best = -kEnter;
      for (std::size_t c = 0; c < allowed_cols; ++c) {
        double rc = at(m, c);
        if (rc < best) {
          best = rc;
          pc = c;
          if (bland) break;
        }
      }
      if (pc == cols) return true;  // optimal
      // ratio test, Bland tie-break on basis index
      std::size_t pr = m + 1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m; ++r) {
        double a = at(r, pc);
        if (a <= kRatio) continue;
        double ratio = at(r, cols - 1) / a;
        if (pr == m + 1) {
          best_ratio = ratio;
          pr = r;
          continue;
        }
        double tie = 1e-10 * (1.0 + std::abs(best_ratio));
        if (ratio < best_ratio - tie) {
          best_ratio = ratio;
          pr = r;
        } else if (ratio < best_ratio + tie && basis[r] < basis[pr]) {
          best_ratio = std::min(best_ratio, ratio);
          pr = r;
        }
      }
      if (pr == m + 1) return false;  // unbounded
      pivot(pr, pc);
      double obj = at(m, cols - 1);
      if (obj < last_obj - 1e-12) {
        since_progress = 0;
        last_obj = obj;
      } else {
        ++since_progress;
      }
    }
    hit_limit = true;
    return true;
  }
};

}  // namespace

namespace {

LpResult solve_lp_perturbed(const std::vector<double>& c,
                            const std::vector<std::vector<double>>& a,
                            const std::vector<double>& b, int max_iters,
                            double epsilon);

}  // namespace

LpResult solve_lp_min(const std::vector<double>& c,
                      const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b, int max_iters) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  for (const auto& row : a)
    if (row.size() != n) throw DomainError("solve_lp_min: ragged matrix");
  if (b.size() != m) throw DomainError("solve_lp_min: rhs size mismatch");

  // escalate the anti-degeneracy perturbation until the walk terminates;
  // even the largest level moves the optimum by far less than the 1e-6
  // cross-validation tolerance
  // audit a claimed optimum against the original rows before trusting it
  auto genuinely_feasible = [&](const LpResult& r) {
    if (r.status != LpResult::Status::Optimal) return true;
    for (std::size_t i = 0; i < m; ++i) {
      double lhs = 0.0, scale = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        lhs += a[i][j] * r.x[j];
        scale = std::max(scale, std::abs(a[i][j] * r.x[j]));
      }
      if (lhs < b[i] - 1e-6 * std::max(scale, std::abs(b[i]))) return false;
    }
    return true;
  };

  LpResult out;
  for (double epsilon : {1e-11, 1e-9, 3e-8}) {
    out = solve_lp_perturbed(c, a, b, max_iters, epsilon);
    if (getenv("LB_LP_DEBUG"))
      fprintf(stderr, "lp attempt eps=%g status=%d obj=%.12g feas=%d\n",
              epsilon, (int)out.status, out.objective,
              (int)genuinely_feasible(out));
    if (out.status == LpResult::Status::Infeasible) return out;
    if (out.status == LpResult::Status::Optimal && genuinely_feasible(out))
      return out;
  }
  if (out.status == LpResult::Status::Optimal)
    out.status = LpResult::Status::IterationLimit;  // audited and distrusted
  return out;
}

namespace {

LpResult solve_lp_perturbed(const std::vector<double>& c,
                            const std::vector<std::vector<double>>& a,
                            const std::vector<double>& b, int max_iters,
                            double epsilon) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();

  // normalize rows and nudge each RHS by a deterministic epsilon; the
  // perturbation breaks the ties that make degenerate bases cycle
  std::vector<std::vector<double>> an(a);
  std::vector<double> bn(b);
  for (std::size_t r = 0; r < m; ++r) {
    double scale = 0.0;
    for (double v : an[r]) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    for (double& v : an[r]) v /= scale;
    bn[r] /= scale;
    double frac = std::fmod(0.6180339887498949 * (r + 1), 1.0);
    bn[r] -= epsilon * (1.0 + frac);  // relax slightly: keeps feasibility
  }

  Tableau tb;
  tb.m = m;
  tb.n = n;
  tb.cols = n + m + m + 1;
  tb.t.assign((m + 1) * tb.cols, 0.0);
  tb.basis.assign(m, 0);

  // rows: a.x - slack = b, negated when b < 0 so the RHS is nonnegative
  std::size_t artificials = 0;
  for (std::size_t r = 0; r < m; ++r) {
    double sign = bn[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tb.at(r, j) = sign * an[r][j];
    tb.at(r, n + r) = -sign;  // surplus
    tb.at(r, tb.cols - 1) = sign * bn[r];
    if (sign < 0.0) {
      // negated row has slack coefficient +1: usable as the basic variable
      tb.basis[r] = n + r;
    } else {
      tb.at(r, n + m + r) = 1.0;
      tb.basis[r] = n + m + r;
      ++artificials;
    }
  }

  int iters = 0;
  bool hit_limit = false;
  LpResult out;

  if (artificials > 0) {
    // phase 1: minimize the sum of artificials. Cost row carries +1 on every
    // artificial column, then basic rows are folded in to zero them out.
    for (std::size_t r = 0; r < m; ++r) tb.at(m, n + m + r) = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (tb.basis[r] < n + m) continue;
      for (std::size_t cidx = 0; cidx < tb.cols; ++cidx)
        tb.at(m, cidx) -= tb.at(r, cidx);
    }
    if (!tb.run(tb.cols - 1, iters, max_iters, hit_limit)) {
      out.status = LpResult::Status::Unbounded;  // cannot happen in phase 1
      return out;
    }
    if (hit_limit) {
      out.status = LpResult::Status::IterationLimit;
      return out;
    }
    if (tb.at(m, tb.cols - 1) < -1e-7) {
      out.status = LpResult::Status::Infeasible;
      return out;
    }
    // artificials still basic at zero sit on dependent rows: pivot them out
    // only over a well-conditioned element, otherwise drop the row entirely
    // (a tiny pivot would amplify rounding across the whole tableau)
    for (std::size_t r = 0; r < m; ++r) {
      if (tb.basis[r] < n + m) continue;
      std::size_t pick = tb.cols;
      for (std::size_t cidx = 0; cidx < n + m; ++cidx) {
        if (std::abs(tb.at(r, cidx)) > 1e-5) {
          pick = cidx;
          break;
        }
      }
      if (pick != tb.cols) {
        tb.pivot(r, pick);
      } else {
        for (std::size_t cidx = 0; cidx < tb.cols; ++cidx) tb.at(r, cidx) = 0.0;
      }
    }
  }

  // phase 2 objective
  for (std::size_t cidx = 0; cidx < tb.cols; ++cidx) tb.at(m, cidx) = 0.0;
  for (std::size_t j = 0; j < n; ++j) tb.at(m, j) = c[j];
  for (std::size_t r = 0; r < m; ++r) {
    if (tb.basis[r] >= n) continue;
    double coef = c[tb.basis[r]];
    if (coef == 0.0) continue;
    for (std::size_t cidx = 0; cidx < tb.cols; ++cidx)
      tb.at(m, cidx) -= coef * tb.at(r, cidx);
  }

  if (!tb.run(n + m, iters, max_iters, hit_limit)) {
    out.status = LpResult::Status::Unbounded;
    return out;
  }
  if (hit_limit) {
    out.status = LpResult::Status::IterationLimit;
    return out;
  }

  out.status = LpResult::Status::Optimal;
  out.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (tb.basis[r] < n) out.x[tb.basis[r]] = tb.at(r, tb.cols - 1);
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
  return out;
}

}  // namespace

}  // namespace lookback

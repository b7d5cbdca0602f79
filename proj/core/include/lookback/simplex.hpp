#pragma once

#include <vector>

namespace lookback {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
  Status status = Status::IterationLimit;
  std::vector<double> x;
  double objective = 0.0;
};

/// Minimize c.x subject to A x >= b, x >= 0, via a dense two-phase primal
/// simplex (Dantzig pricing, Bland fallback on stalls). Meant for the small
/// cross-validation programs the pricing oracle builds, not as a general
/// solver.
LpResult solve_lp_min(const std::vector<double>& c,
                      const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b, int max_iters = 200000);

}  // namespace lookback

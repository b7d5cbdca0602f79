#include "lookback/validation.hpp"

#include <cmath>

namespace lookback {

namespace {

std::vector<double> default_grid() {
  std::vector<double> g;
  for (double x = 1.0; x <= 1.0e6; x *= 1.25) g.push_back(x);
  return g;
}

void check_spine_table(const std::vector<double>& x,
                       const std::vector<double>& v, double tol,
                       ValidationReport& report) {
  if (std::abs(v.front() - 1.0) > tol)
    report.issues.push_back({"value_at_1", x.front(), v.front()});
  double prev_slope = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    double slope = (v[i + 1] - v[i]) / (x[i + 1] - x[i]);
    if (v[i + 1] < v[i] - tol)
      report.issues.push_back({"increasing", x[i + 1], v[i + 1] - v[i]});
    if (i == 0 && slope > 1.0 + tol)
      report.issues.push_back({"slope_at_1", x.front(), slope});
    if (i > 0 && slope > prev_slope + tol)
      report.issues.push_back({"concave", x[i], slope - prev_slope});
    prev_slope = slope;
  }
}

}  // namespace

ValidationReport validate_spine(const Spine& s, double tol) {
  ValidationReport report;
  if (s.is_piecewise_linear()) {
    const PiecewiseLinear& p = s.pwl();
    if (std::abs(p.value(1.0) - 1.0) > tol)
      report.issues.push_back({"value_at_1", 1.0, p.value(1.0)});
    if (p.domain_start() != 1.0)
      report.issues.push_back({"value_at_1", p.domain_start(), p.value(1.0)});
    const auto& slopes = p.slopes();
    if (slopes.front() > 1.0 + tol)
      report.issues.push_back({"slope_at_1", 1.0, slopes.front()});
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      if (slopes[i] < -tol)
        report.issues.push_back({"increasing", p.knots()[i], slopes[i]});
      if (i > 0 && slopes[i] > slopes[i - 1] + tol)
        report.issues.push_back(
            {"concave", p.knots()[i], slopes[i] - slopes[i - 1]});
    }
    return report;
  }
  std::vector<double> g = default_grid();
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = s.value(g[i]);
  check_spine_table(g, v, tol, report);
  return report;
}

ValidationReport validate_spine(const std::function<double(double)>& f,
                                const std::vector<double>& grid, double tol) {
  ValidationReport report;
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
  check_spine_table(grid, v, tol, report);
  return report;
}

ValidationReport validate_ala(const Ala& a, double tol) {
  std::vector<double> g = default_grid();
  return validate_ala(
      [&a](double x_star, double x) { return a(x_star, x); }, g, tol);
}

ValidationReport validate_ala(const std::function<double(double, double)>& f,
                              const std::vector<double>& grid, double tol) {
  ValidationReport report;
  // diagonal must be a spine
  std::vector<double> diag(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) diag[i] = f(grid[i], grid[i]);
  check_spine_table(grid, diag, tol, report);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    double xs = grid[i];
    double at0 = f(xs, 0.0);
    if (at0 < -tol) report.issues.push_back({"nonnegative", xs, at0});
    double slope = (diag[i] - at0) / xs;
    // affine in x: interior points must sit on the chord
    for (double lam : {0.25, 0.5, 0.75}) {
      double x = lam * xs;
      double expect = at0 + slope * x;
      double got = f(xs, x);
      double scale = std::max({1.0, std::abs(expect), std::abs(got)});
      if (std::abs(got - expect) > tol * scale) {
        report.issues.push_back({"linear_in_x", xs, got - expect});
        break;
      }
    }
    // x-slope agrees with the diagonal's right derivative
    if (i + 1 < grid.size()) {
      double h = std::min(1e-6 * xs, 0.5 * (grid[i + 1] - xs));
      double diag_slope = (f(xs + h, xs + h) - diag[i]) / h;
      if (std::abs(diag_slope - slope) >
          1e-4 * std::max(1.0, std::abs(slope)) + 1e-6)
        report.issues.push_back({"slope_agreement", xs, diag_slope - slope});
    }
  }
  return report;
}

}  // namespace lookback

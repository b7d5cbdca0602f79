#include "lookback/transforms.hpp"

#include <cmath>
#include <string>

#include "lookback/errors.hpp"

namespace lookback {

StepFunction measure_to_asla(const DiscreteMeasure& p) {
  std::vector<double> jumps, levels;
  jumps.reserve(p.atoms().size());
  levels.reserve(p.atoms().size());
  double acc = 0.0;
  for (const Atom& a : p.atoms()) {
    acc += a.location * a.mass;
    jumps.push_back(a.location);
    levels.push_back(acc);
  }
  return StepFunction(0.0, std::move(jumps), std::move(levels));
}

DiscreteMeasure asla_to_measure(const StepFunction& f) {
  std::vector<Atom> atoms;
  double total = 0.0;
  double prev = f.initial();
  if (f.initial() != 0.0)
    throw DomainError("asla_to_measure: step must start at 0 on [1, first jump)");
  for (std::size_t i = 0; i < f.jump_count(); ++i) {
    double du = f.levels()[i] - prev;
    if (du < 0.0)
      throw DomainError("asla_to_measure: step function is not increasing");
    if (du > 0.0) atoms.push_back({f.jumps()[i], du / f.jumps()[i]});
    prev = f.levels()[i];
  }
  for (const Atom& a : atoms) total += a.mass;
  if (total > 1.0 + 1e-9)
    throw NotAnSlaError(
        "asla_to_measure: integral of F(y)/y^2 is " + std::to_string(total) +
            " > 1; not a scaled adjuster",
        total);
  double mass_inf = total < 1.0 ? 1.0 - total : 0.0;
  return DiscreteMeasure::unchecked(std::move(atoms), mass_inf);
}

Spine measure_to_spine(const DiscreteMeasure& p) {
  std::vector<double> x{1.0}, v{1.0}, s;
  s.push_back(p.tail(1.0));
  const auto& atoms = p.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].location <= 1.0) continue;  // an atom at 1 shapes s[0] only
    x.push_back(atoms[i].location);
    v.push_back(v.back() + s.back() * (x[x.size() - 1] - x[x.size() - 2]));
    s.push_back(p.tail_from(i + 1));
  }
  return Spine(PiecewiseLinear(std::move(x), std::move(v), std::move(s)));
}

DiscreteMeasure spine_to_measure(const Spine& s) {
  if (!s.is_piecewise_linear())
    throw DomainError(
        "spine_to_measure: analytic spine; discretize via Adjuster::to_discrete");
  const PiecewiseLinear& pwl = s.pwl();
  if (pwl.domain_start() != 1.0)
    throw DomainError("spine_to_measure: spine domain must start at 1");
  const auto& slopes = pwl.slopes();
  if (slopes.front() > 1.0 + 1e-12)
    throw DomainError("spine_to_measure: right slope at 1 exceeds 1");
  std::vector<Atom> atoms;
  // rounding can leave a few ulps of mass where the data has none
  constexpr double kDust = 1e-15;
  double at_one = 1.0 - slopes.front();
  if (at_one > kDust) atoms.push_back({1.0, at_one});
  for (std::size_t j = 1; j < pwl.size(); ++j) {
    double drop = slopes[j - 1] - slopes[j];
    if (drop < -1e-12)
      throw DomainError("spine_to_measure: slopes increase; spine not concave");
    if (drop > kDust) atoms.push_back({pwl.knots()[j], drop});
  }
  return DiscreteMeasure(std::move(atoms), pwl.terminal_slope());
}

TailFunction spine_to_tail(const Spine& s) {
  return [s](double x) { return s.right_slope(x); };
}

Ala spine_to_ala(Spine s) { return Ala(std::move(s)); }

Spine ala_to_spine(const Ala& a) { return a.spine(); }

ScaledAsla ala_to_asla(const Ala& a) {
  Spine s = a.spine();
  if (s.is_piecewise_linear()) {
    const PiecewiseLinear& pwl = s.pwl();
    std::vector<double> jumps, levels;
    jumps.reserve(pwl.size());
    levels.reserve(pwl.size());
    for (std::size_t j = 0; j < pwl.size(); ++j) {
      jumps.push_back(pwl.knots()[j]);
      levels.push_back(pwl.values()[j] - pwl.slopes()[j] * pwl.knots()[j]);
    }
    return ScaledAsla(StepFunction(0.0, std::move(jumps), std::move(levels)));
  }
  double terminal = s.terminal_slope();
  return ScaledAsla(
      [s](double y) { return s.value(y) - s.right_slope(y) * y; }, {},
      1.0 - terminal);
}

Ala measure_to_ala(const DiscreteMeasure& p) {
  return Ala(
      [p](double x_star, double x) {
        return p.partial_first_moment(x_star) + x * p.tail(x_star);
      },
      [p]() { return measure_to_spine(p); });
}

StepFunction running_sup_envelope(const std::vector<double>& grid,
                                  const std::vector<double>& values) {
  if (grid.size() != values.size() || grid.empty())
    throw DomainError("running_sup_envelope: grid/value size mismatch");
  std::vector<double> jumps, levels;
  double running = values[0];
  jumps.push_back(grid[0]);
  levels.push_back(running);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1])
      throw DomainError("running_sup_envelope: grid not strictly increasing");
    if (values[i] > running) {
      running = values[i];
      jumps.push_back(grid[i]);
      levels.push_back(running);
    }
  }
  return StepFunction(0.0, std::move(jumps), std::move(levels));
}

StepFunction running_sup_envelope(const std::function<double(double)>& f,
                                  const std::vector<double>& grid) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);
  return running_sup_envelope(grid, values);
}

}  // namespace lookback

#include "lookback/adjuster.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lookback/errors.hpp"
#include "lookback/transforms.hpp"

namespace lookback {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_threshold(double alpha) { return std::exp(1.0 + alpha); }

/// Decreasing continuous tail of the log family for x >= e^(1+alpha).
double log_tail_above(double alpha, double x) {
  double w = std::log(x);
  double a = std::pow(1.0 + alpha, alpha);
  return a * std::pow(w, -alpha) - alpha * a * std::pow(w, -1.0 - alpha);
}

std::shared_ptr<const PiecewiseLinear> spine_pwl_of(const DiscreteMeasure& m) {
  return std::make_shared<const PiecewiseLinear>(measure_to_spine(m).pwl());
}

}  // namespace

Adjuster Adjuster::power(double alpha, double cash) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("power adjuster: alpha must lie in (0,1)");
  if (!(cash >= 0.0) || !(cash <= 1.0))
    throw DomainError("power adjuster: cash must lie in [0,1]");
  return Adjuster(PowerFamily{alpha, cash});
}

Adjuster Adjuster::log_family(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("log adjuster: alpha must be positive");
  return Adjuster(LogFamily{alpha});
}

Adjuster Adjuster::threshold(double u) {
  if (!(u >= 1.0)) throw DomainError("threshold adjuster: u must be >= 1");
  return Adjuster(ThresholdFamily{u});
}

Adjuster Adjuster::discrete(DiscreteMeasure measure) {
  auto spine = spine_pwl_of(measure);
  return Adjuster(DiscreteFamily{std::move(measure), std::move(spine)});
}

Adjuster Adjuster::cash_mix(double c, Adjuster inner) {
  if (!(c >= 0.0) || !(c <= 1.0))
    throw DomainError("cash mix: c must lie in [0,1]");
  return Adjuster(
      CashMixFamily{c, std::make_shared<const Adjuster>(std::move(inner))});
}

double Adjuster::tail(double x) const {
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerFamily>) {
          return (1.0 - f.cash) * (1.0 - f.alpha) * std::pow(x, -f.alpha) +
                 f.cash;
        } else if constexpr (std::is_same_v<T, LogFamily>) {
          return x < log_threshold(f.alpha) ? 1.0 : log_tail_above(f.alpha, x);
        } else if constexpr (std::is_same_v<T, ThresholdFamily>) {
          return x < f.u ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, DiscreteFamily>) {
          return f.measure.tail(x);
        } else {
          return f.c + (1.0 - f.c) * f.inner->tail(x);
        }
      },
      family_);
}

double Adjuster::spine_value(double x) const {
  return std::visit(
      [x](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerFamily>) {
          return (1.0 - f.cash) * std::pow(x, 1.0 - f.alpha) + f.cash * x;
        } else if constexpr (std::is_same_v<T, LogFamily>) {
          if (x < log_threshold(f.alpha)) return x;
          return std::pow(1.0 + f.alpha, f.alpha) * x *
                 std::pow(std::log(x), -f.alpha);
        } else if constexpr (std::is_same_v<T, ThresholdFamily>) {
          return std::min(x, f.u);
        } else if constexpr (std::is_same_v<T, DiscreteFamily>) {
          return f.spine->value(x);
        } else {
          return f.c * x + (1.0 - f.c) * f.inner->spine_value(x);
        }
      },
      family_);
}

double Adjuster::asla_value(double y) const {
  return std::visit(
      [y](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerFamily>) {
          return (1.0 - f.cash) * f.alpha * std::pow(y, 1.0 - f.alpha);
        } else if constexpr (std::is_same_v<T, LogFamily>) {
          if (y < log_threshold(f.alpha)) return 0.0;
          return f.alpha * std::pow(1.0 + f.alpha, f.alpha) * y *
                 std::pow(std::log(y), -1.0 - f.alpha);
        } else if constexpr (std::is_same_v<T, ThresholdFamily>) {
          return y >= f.u ? f.u : 0.0;
        } else if constexpr (std::is_same_v<T, DiscreteFamily>) {
          return f.measure.partial_first_moment(y);
        } else {
          return (1.0 - f.c) * f.inner->asla_value(y);
        }
      },
      family_);
}

double Adjuster::ala_value(double x_star, double x) const {
  return spine_value(x_star) + tail(x_star) * (x - x_star);
}

double Adjuster::mass_infinity() const {
  return std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerFamily>) {
          return f.cash;
        } else if constexpr (std::is_same_v<T, LogFamily>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, ThresholdFamily>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, DiscreteFamily>) {
          return f.measure.mass_infinity();
        } else {
          return f.c + (1.0 - f.c) * f.inner->mass_infinity();
        }
      },
      family_);
}

double Adjuster::asla_integral() const {
  return std::visit(
      [this](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, DiscreteFamily>) {
          return f.measure.total_atom_mass();
        } else if constexpr (std::is_same_v<T, CashMixFamily>) {
          return (1.0 - f.c) * f.inner->asla_integral();
        } else {
          return 1.0 - mass_infinity();
        }
      },
      family_);
}

double Adjuster::asla_limit() const {
  return std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerFamily>) {
          return f.cash < 1.0 ? kInf : 0.0;
        } else if constexpr (std::is_same_v<T, LogFamily>) {
          return kInf;
        } else if constexpr (std::is_same_v<T, ThresholdFamily>) {
          return f.u;
        } else if constexpr (std::is_same_v<T, DiscreteFamily>) {
          const auto& atoms = f.measure.atoms();
          return atoms.empty()
                     ? 0.0
                     : f.measure.partial_first_moment(atoms.back().location);
        } else {
          return (1.0 - f.c) * f.inner->asla_limit();
        }
      },
      family_);
}

Spine Adjuster::spine() const {
  return std::visit(
      [this](const auto& f) -> Spine {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ThresholdFamily>) {
          if (f.u == 1.0)
            return Spine(PiecewiseLinear({1.0}, {1.0}, {0.0}));
          return Spine(PiecewiseLinear({1.0, f.u}, {1.0, f.u}, {1.0, 0.0}));
        } else if constexpr (std::is_same_v<T, DiscreteFamily>) {
          return Spine(*f.spine);
        } else if constexpr (std::is_same_v<T, CashMixFamily>) {
          Spine inner = f.inner->spine();
          if (inner.is_piecewise_linear()) {
            const PiecewiseLinear& p = inner.pwl();
            std::vector<double> v(p.size()), s(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) {
              v[i] = f.c * p.knots()[i] + (1.0 - f.c) * p.values()[i];
              s[i] = f.c + (1.0 - f.c) * p.slopes()[i];
            }
            return Spine(PiecewiseLinear(p.knots(), std::move(v), std::move(s)));
          }
          Adjuster self = *this;
          return Spine([self](double x) { return self.spine_value(x); },
                       [self](double x) { return self.tail(x); },
                       mass_infinity());
        } else {
          Adjuster self = *this;
          return Spine([self](double x) { return self.spine_value(x); },
                       [self](double x) { return self.tail(x); },
                       mass_infinity());
        }
      },
      family_);
}

ScaledAsla Adjuster::asla() const {
  return std::visit(
      [this](const auto& f) -> ScaledAsla {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ThresholdFamily>) {
          return ScaledAsla(StepFunction(0.0, {f.u}, {f.u}));
        } else if constexpr (std::is_same_v<T, DiscreteFamily>) {
          return ScaledAsla(measure_to_asla(f.measure));
        } else if constexpr (std::is_same_v<T, PowerFamily>) {
          double a = f.alpha, scale = 1.0 - f.cash;
          return ScaledAsla(
              [a, scale](double y) { return scale * a * std::pow(y, 1.0 - a); },
              {}, 1.0 - f.cash,
              [a, scale](double y0) { return scale * std::pow(y0, -a); });
        } else if constexpr (std::is_same_v<T, LogFamily>) {
          double a = f.alpha, e0 = log_threshold(f.alpha);
          double lead = a * std::pow(1.0 + a, a);
          return ScaledAsla(
              [a, e0, lead](double y) {
                return y < e0 ? 0.0
                              : lead * y * std::pow(std::log(y), -1.0 - a);
              },
              {e0}, 1.0,
              [a, e0](double y0) {
                return std::pow(1.0 + a, a) *
                       std::pow(std::log(std::max(y0, e0)), -a);
              });
        } else {
          ScaledAsla inner = f.inner->asla();
          double c = f.c;
          if (inner.is_step()) {
            const StepFunction& s = inner.step();
            std::vector<double> levels(s.levels());
            for (double& v : levels) v *= 1.0 - c;
            return ScaledAsla(
                StepFunction((1.0 - c) * s.initial(), s.jumps(), levels));
          }
          auto fn = inner.as_function();
          auto tail = inner.tail_integral();
          return ScaledAsla(
              [fn, c](double y) { return (1.0 - c) * fn(y); },
              inner.breakpoints(), asla_integral(),
              tail ? std::function<double(double)>(
                         [tail, c](double y0) { return (1.0 - c) * tail(y0); })
                   : std::function<double(double)>());
        }
      },
      family_);
}

Ala Adjuster::ala() const { return Ala(spine()); }

namespace {

/// Quantile chunks deep in a heavy tail can land beyond double range (the
/// log family keeps mass past exp(700)); clamp locations and merge chunks
/// that collapse onto the same point so the result stays a valid measure.
std::vector<Atom> clamp_and_merge(std::vector<Atom> atoms) {
  constexpr double kLocationCap = 1e30;
  std::vector<Atom> out;
  for (Atom a : atoms) {
    a.location = std::min(a.location, kLocationCap);
    if (!out.empty() && a.location <= out.back().location)
      out.back().mass += a.mass;
    else
      out.push_back(a);
  }
  return out;
}

}  // namespace

DiscreteMeasure Adjuster::to_discrete(int k) const {
  if (k < 1) throw DomainError("to_discrete: k must be positive");
  return std::visit(
      [k](const auto& f) -> DiscreteMeasure {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PowerFamily>) {
          std::vector<Atom> atoms;
          double scale = 1.0 - f.cash;
          if (scale > 0.0) {
            atoms.push_back({1.0, scale * f.alpha});
            double chunk = scale * (1.0 - f.alpha) / k;
            for (int j = 1; j <= k; ++j) {
              // equal-mass quantile midpoints of the continuous part
              double q = 1.0 - (j - 0.5) / k;
              atoms.push_back({std::pow(q, -1.0 / f.alpha), chunk});
            }
          }
          return DiscreteMeasure::unchecked(clamp_and_merge(std::move(atoms)),
                                            f.cash);
        } else if constexpr (std::is_same_v<T, LogFamily>) {
          double e0 = log_threshold(f.alpha);
          std::vector<Atom> atoms;
          atoms.push_back({e0, f.alpha / (1.0 + f.alpha)});
          double cont = 1.0 / (1.0 + f.alpha);
          for (int j = 1; j <= k; ++j) {
            double target = cont * (1.0 - (j - 0.5) / k);
            // invert the continuous tail by bisection in log space
            double lo = std::log(e0), hi = lo;
            while (log_tail_above(f.alpha, std::exp(hi)) > target && hi < 700.0)
              hi = hi * 2.0;
            for (int it = 0; it < 200; ++it) {
              double mid = 0.5 * (lo + hi);
              if (log_tail_above(f.alpha, std::exp(mid)) > target)
                lo = mid;
              else
                hi = mid;
            }
            atoms.push_back({std::exp(0.5 * (lo + hi)), cont / k});
          }
          return DiscreteMeasure::unchecked(clamp_and_merge(std::move(atoms)),
                                            0.0);
        } else if constexpr (std::is_same_v<T, ThresholdFamily>) {
          return DiscreteMeasure::point_mass(f.u);
        } else if constexpr (std::is_same_v<T, DiscreteFamily>) {
          return f.measure;
        } else {
          DiscreteMeasure inner = f.inner->to_discrete(k);
          std::vector<Atom> atoms = inner.atoms();
          for (Atom& a : atoms) a.mass *= 1.0 - f.c;
          double mi = f.c + (1.0 - f.c) * inner.mass_infinity();
          if (f.c == 1.0) atoms.clear();
          return DiscreteMeasure::unchecked(std::move(atoms), mi);
        }
      },
      family_);
}

}  // namespace lookback

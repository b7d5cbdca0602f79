#pragma once

#include <memory>
#include <variant>

#include "lookback/measure.hpp"
#include "lookback/spine.hpp"

namespace lookback {

class Adjuster;

/// F(y) = alpha * y^(1-alpha), mixed with a cash fraction: the measure keeps
/// weight (1-c)*alpha at 1, density (1-c)*alpha*(1-alpha)*y^(-1-alpha), and
/// mass c at infinity.
struct PowerFamily {
  double alpha;  // in (0, 1)
  double cash;   // in [0, 1]
};

/// F(y) = alpha * (1+alpha)^alpha * y / ln^(1+alpha) y above y = e^(1+alpha),
/// zero below; the measure has an atom of mass alpha/(1+alpha) at e^(1+alpha).
struct LogFamily {
  double alpha;  // > 0
};

/// Point mass at u: hold one unit until the running max reaches u, then sell.
struct ThresholdFamily {
  double u;  // >= 1
};

/// Arbitrary discrete measure; the representation on which every transform
/// is exact.
struct DiscreteFamily {
  DiscreteMeasure measure;
  std::shared_ptr<const PiecewiseLinear> spine;  // cached piecewise spine
};

/// Hold c units of the security outright and run the inner adjuster on the
/// remaining 1-c of capital; equivalently, move a fraction c of the inner
/// measure's mass to infinity.
struct CashMixFamily {
  double c;  // in [0, 1]
  std::shared_ptr<const Adjuster> inner;
};

/// A lookback adjuster: one object exposing the probability-measure, spine,
/// scaled-ASLA and ALA views coherently. Values are immutable after
/// construction and all evaluators are pure, so instances can be shared
/// freely across threads.
class Adjuster {
 public:
  using Family = std::variant<PowerFamily, LogFamily, ThresholdFamily,
                              DiscreteFamily, CashMixFamily>;

  static Adjuster power(double alpha, double cash = 0.0);
  static Adjuster log_family(double alpha);
  static Adjuster threshold(double u);
  static Adjuster discrete(DiscreteMeasure measure);
  static Adjuster cash_mix(double c, Adjuster inner);

  /// Tail T(x) = P((x, inf]); equals the spine's right derivative and the
  /// number of units of the security held at running max x.
  double tail(double x) const;

  /// Diagonal value F(x, x).
  double spine_value(double x) const;

  /// One-variable view F(y); the guarantee floor against the running max.
  double asla_value(double y) const;

  /// Two-variable view F(x_star, x) = spine(x_star) + tail(x_star)(x - x_star).
  double ala_value(double x_star, double x) const;

  double mass_infinity() const;

  /// Exact value of the scaled-ASLA integral; equals 1 - mass_infinity for
  /// the closed-form families and the total atom mass for discrete measures
  /// (the same thing when the measure is a genuine probability measure).
  double asla_integral() const;

  /// limit of the ASLA view at infinity; +inf for unbounded families.
  double asla_limit() const;

  Spine spine() const;
  ScaledAsla asla() const;
  Ala ala() const;

  /// Discretize onto a k-atom measure by equal-mass quantile splitting of the
  /// continuous part, keeping family atoms (at 1 for power, at e^(1+alpha)
  /// for log) exact. Already-discrete adjusters return their measure.
  DiscreteMeasure to_discrete(int k = 256) const;

  const Family& family() const { return family_; }

 private:
  explicit Adjuster(Family f) : family_(std::move(f)) {}
  Family family_;
};

}  // namespace lookback

#pragma once

#include <functional>
#include <vector>

namespace lookback {

struct Atom {
  double location;  // u >= 1
  double mass;      // m > 0
};

/// Decreasing right-continuous tail evaluator x in [1,inf) -> [0,1].
/// For a measure this is T(x) = P((x, inf]); it equals both the spine's
/// right derivative and the trading position at running max x.
using TailFunction = std::function<double(double)>;

/// Probability measure on [1, inf]: finite atoms plus an explicit mass at
/// infinity. Locations strictly increase, all masses are positive, and the
/// total mass is 1 within 1e-12.
class DiscreteMeasure {
 public:
  static constexpr double kMassTolerance = 1e-12;

  DiscreteMeasure(std::vector<Atom> atoms, double mass_infinity);

  /// Skips the total-mass check (still sorted/positive-checked). Used for
  /// quantile discretizations whose masses sum to 1 only up to rounding, and
  /// by tests that need deliberately broken inputs.
  static DiscreteMeasure unchecked(std::vector<Atom> atoms,
                                   double mass_infinity);

  /// All mass at infinity; the hold-one-unit adjuster.
  static DiscreteMeasure point_mass_at_infinity();
  /// Point mass at a finite location u >= 1.
  static DiscreteMeasure point_mass(double u);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double mass_infinity() const { return mass_infinity_; }

  /// T(x) = sum of masses at locations > x, plus mass_infinity.
  /// Exactly the suffix sums computed once at construction.
  double tail(double x) const;

  /// Suffix sum starting at atom index i (tail just right of atom i-1);
  /// tail_from(0) counts every atom. tail_from(n) == mass_infinity.
  double tail_from(std::size_t i) const { return suffix_[i]; }

  /// integral of u over [1, x]: sum of u_i * m_i for u_i <= x. This is the
  /// scaled-ASLA view evaluated pointwise.
  double partial_first_moment(double x) const;

  double total_atom_mass() const;

 private:
  DiscreteMeasure() = default;
  void init_suffix();
  void check_shape() const;

  std::vector<Atom> atoms_;
  double mass_infinity_ = 0.0;
  std::vector<double> suffix_;       // suffix_[i] = sum_{j>=i} m_j + mass_inf
  std::vector<double> moment_prefix_;  // moment_prefix_[i] = sum_{j<i} u_j m_j
};

}  // namespace lookback

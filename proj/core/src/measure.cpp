#include "lookback/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lookback/errors.hpp"

namespace lookback {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms, double mass_infinity)
    : atoms_(std::move(atoms)), mass_infinity_(mass_infinity) {
  check_shape();
  double total = total_atom_mass() + mass_infinity_;
  if (std::abs(total - 1.0) > kMassTolerance)
    throw DomainError("DiscreteMeasure: total mass " + std::to_string(total) +
                      " differs from 1 by more than 1e-12");
  init_suffix();
}

DiscreteMeasure DiscreteMeasure::unchecked(std::vector<Atom> atoms,
                                           double mass_infinity) {
  DiscreteMeasure m;
  m.atoms_ = std::move(atoms);
  m.mass_infinity_ = mass_infinity;
  m.check_shape();
  m.init_suffix();
  return m;
}

DiscreteMeasure DiscreteMeasure::point_mass_at_infinity() {
  return DiscreteMeasure({}, 1.0);
}

DiscreteMeasure DiscreteMeasure::point_mass(double u) {
  return DiscreteMeasure({{u, 1.0}}, 0.0);
}

void DiscreteMeasure::check_shape() const {
  if (mass_infinity_ < 0.0 || mass_infinity_ > 1.0 + kMassTolerance)
    throw DomainError("DiscreteMeasure: mass_infinity outside [0,1]");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!(atoms_[i].location >= 1.0))
      throw DomainError("DiscreteMeasure: atom location below 1");
    if (!(atoms_[i].mass > 0.0))
      throw DomainError("DiscreteMeasure: atom mass must be positive");
    if (i > 0 && atoms_[i].location <= atoms_[i - 1].location)
      throw DomainError("DiscreteMeasure: atom locations must strictly increase");
  }
}

void DiscreteMeasure::init_suffix() {
  std::size_t n = atoms_.size();
  suffix_.assign(n + 1, mass_infinity_);
  for (std::size_t i = n; i-- > 0;) suffix_[i] = atoms_[i].mass + suffix_[i + 1];
  moment_prefix_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    moment_prefix_[i + 1] = moment_prefix_[i] + atoms_[i].location * atoms_[i].mass;
}

double DiscreteMeasure::tail(double x) const {
  // count atoms with location strictly greater than x
  auto it = std::upper_bound(
      atoms_.begin(), atoms_.end(), x,
      [](double v, const Atom& a) { return v < a.location; });
  return suffix_[static_cast<std::size_t>(it - atoms_.begin())];
}

double DiscreteMeasure::partial_first_moment(double x) const {
  auto it = std::upper_bound(
      atoms_.begin(), atoms_.end(), x,
      [](double v, const Atom& a) { return v < a.location; });
  return moment_prefix_[static_cast<std::size_t>(it - atoms_.begin())];
}

double DiscreteMeasure::total_atom_mass() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.mass;
  return s;
}

}  // namespace lookback

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "lookback/measure.hpp"
#include "lookback/rng.hpp"

namespace lookback::testing {

/// Random probability measure on [1, inf]: up to max_atoms atoms spread over
/// [1, 1000], optional mass at infinity. Masses normalized to total 1.
inline DiscreteMeasure random_measure(Rng& rng, int max_atoms,
                                      bool allow_mass_inf = true) {
  int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_atoms)));
  std::vector<double> locs;
  if (rng.flip()) locs.push_back(1.0);
  while (static_cast<int>(locs.size()) < n) {
    double u = std::exp(rng.uniform(0.0, std::log(1000.0)));
    locs.push_back(u);
  }
  std::sort(locs.begin(), locs.end());
  locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
  // keep locations separated so slope drops stay well conditioned
  std::vector<double> kept;
  for (double u : locs)
    if (kept.empty() || u > kept.back() * (1.0 + 1e-9)) kept.push_back(u);

  double mass_inf = allow_mass_inf && rng.flip() ? rng.uniform(0.0, 0.5) : 0.0;
  std::vector<double> w(kept.size());
  double total = 0.0;
  for (double& x : w) {
    x = rng.uniform(1e-3, 1.0);
    total += x;
  }
  std::vector<Atom> atoms(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i)
    atoms[i] = {kept[i], w[i] / total * (1.0 - mass_inf)};
  return DiscreteMeasure(std::move(atoms), mass_inf);
}

inline std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> g(n);
  double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(i * step);
  g[0] = lo;
  g[n - 1] = hi;
  return g;
}

}  // namespace lookback::testing

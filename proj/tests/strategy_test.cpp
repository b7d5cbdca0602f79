#include <doctest.h>

#include <cmath>

#include "lookback/errors.hpp"
#include "lookback/paths.hpp"
#include "lookback/strategy.hpp"
#include "test_support.hpp"

using namespace lookback;

namespace {

std::vector<Adjuster> family_zoo(Rng& rng) {
  return {Adjuster::power(0.5),
          Adjuster::log_family(1.0),
          Adjuster::threshold(2.0),
          Adjuster::discrete(testing::random_measure(rng, 24)),
          Adjuster::cash_mix(0.3, Adjuster::power(0.25))};
}

void check_floors(const Adjuster& a, const std::vector<CapitalRecord>& trail) {
  for (const CapitalRecord& r : trail) {
    double tol = 1e-9 * std::max(1.0, std::abs(r.capital));
    CHECK(r.capital >= r.ala_floor - tol);
    CHECK(r.capital >= r.strong_floor - tol);
    CHECK(r.position >= 0.0);
    CHECK(r.position <= 1.0);
  }
  (void)a;
}

}  // namespace

TEST_CASE("position equals the tail on every representation") {
  CHECK(position(Adjuster::power(0.5), 4.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(position(Adjuster::discrete(DiscreteMeasure::point_mass_at_infinity()),
                 123.0) == 1.0);
  Adjuster th = Adjuster::threshold(2.0);
  CHECK(position(th, 1.5) == 1.0);
  CHECK(position(th, 2.0) == 0.0);
  CHECK_THROWS_AS(position(th, 0.5), DomainError);

  // spine right-derivative route and measure tail agree exactly
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    Adjuster a = Adjuster::discrete(testing::random_measure(rng, 32));
    Spine s = a.spine();
    for (double x : {1.0, 1.3, 2.0, 7.7, 450.0})
      CHECK(position(a, x) == s.right_slope(x));
  }
}

TEST_CASE("single steps match the protocol arithmetic") {
  Adjuster hold = Adjuster::discrete(DiscreteMeasure::point_mass_at_infinity());
  StrategyState s = engine_start(hold);
  s = engine_step(hold, s, 3.0);
  CHECK(s.capital == 3.0);  // one unit of stock

  Adjuster pow = Adjuster::power(0.5);
  StrategyState p = engine_start(pow);
  p = engine_step(pow, p, 4.0);
  CHECK(p.capital == doctest::Approx(2.5));  // 1 + 0.5 * 3
  CHECK(p.capital >= pow.spine_value(4.0));  // floor 2

  // constant path leaves capital alone
  StrategyState c = engine_start(pow);
  for (int i = 0; i < 10; ++i) c = engine_step(pow, c, 1.0);
  CHECK(c.capital == 1.0);
}

TEST_CASE("run_path scales by start capital and X0") {
  Adjuster hold = Adjuster::discrete(DiscreteMeasure::point_mass_at_infinity());
  PricePath doubling;
  doubling.prices = {100.0, 150.0, 200.0};
  auto trail = run_path(hold, doubling, 100.0);
  CHECK(trail.back().capital == doctest::Approx(200.0));
  CHECK(trail.front().capital == 100.0);
}

TEST_CASE("records on atoms bind the stronger floor exactly") {
  DiscreteMeasure m({{2.0, 0.5}, {4.0, 0.25}}, 0.25);
  Adjuster a = Adjuster::discrete(m);
  PricePath path = paths::record_walk({2.0, 4.0});
  auto trail = run_path(a, path);
  for (const CapitalRecord& r : trail) {
    CHECK(std::abs(r.capital_norm - r.strong_floor) <= 1e-12);
    CHECK(std::abs(r.capital_norm - r.ala_floor) <= 1e-12);
  }
  CHECK(trail.back().capital == doctest::Approx(3.0));  // spine(4)
}

TEST_CASE("spike and crash keeps the adjusted guarantee") {
  Adjuster pow = Adjuster::power(0.5);
  PricePath path = paths::spike_crash(1.0, 10.0, 30, 10, 0.0);
  auto trail = run_path(pow, path);
  double f_at_10 = 0.5 * std::sqrt(10.0);
  CHECK(trail.back().capital >= f_at_10 - 1e-12);
  CHECK(trail.back().price == 0.0);
  check_floors(pow, trail);
}

TEST_CASE("floor values and domain errors") {
  Adjuster pow = Adjuster::power(0.5);
  FloorPair f = floor_values(pow, 4.0, 4.0);
  CHECK(f.ala_floor == doctest::Approx(2.0));
  CHECK(f.strong_floor == doctest::Approx(2.0));
  FloorPair g = floor_values(Adjuster::power(0.5, 0.5), 4.0, 2.0);
  CHECK(g.ala_floor == doctest::Approx(1.75));
  FloorPair at_one = floor_values(pow, 1.0, 1.0);
  CHECK(at_one.ala_floor == doctest::Approx(1.0));
  CHECK_THROWS_AS(floor_values(pow, 4.0, 5.0), DomainError);
  CHECK_THROWS_AS(floor_values(pow, 0.5, 0.2), DomainError);
}

TEST_CASE("superhedge guarantee over the adversarial library") {
  Rng rng(2024);
  for (const Adjuster& a : family_zoo(rng)) {
    for (const PricePath& p : paths::adversarial_library(1.0)) {
      auto trail = run_path(a, p);
      check_floors(a, trail);
    }
  }
}

TEST_CASE("superhedge guarantee over random paths") {
  Rng rng(99);
  auto zoo = family_zoo(rng);
  for (int i = 0; i < 40; ++i) {
    PricePath p = paths::random_multiplicative(
        1.0, 300, derive_seed(4242, static_cast<std::uint64_t>(i)));
    for (const Adjuster& a : zoo) check_floors(a, run_path(a, p));
  }
}

TEST_CASE("self-financing audit re-verifies exactly from the trail") {
  Rng rng(5150);
  Adjuster a = Adjuster::discrete(testing::random_measure(rng, 16));
  PricePath p = paths::random_multiplicative(3.7, 500, 8080);
  auto trail = run_path(a, p, 2.5);
  // replaying the recurrence from the recorded positions and prices must
  // reproduce the capital column bit for bit: no injection, no leak
  double k = trail.front().capital_norm;
  CHECK(k == 1.0);
  for (std::size_t t = 1; t < trail.size(); ++t) {
    k = k + trail[t].position * (trail[t].price_norm - trail[t - 1].price_norm);
    CHECK(k == trail[t].capital_norm);
  }
}

TEST_CASE("positions decrease as the record rises") {
  Rng rng(31337);
  for (const Adjuster& a : family_zoo(rng)) {
    double prev = 2.0;
    for (double x : testing::log_spaced(1.0, 1e5, 60)) {
      double p = position(a, x);
      CHECK(p <= prev + 1e-15);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      prev = p;
    }
  }
}

TEST_CASE("scale equivariance of run_path") {
  Adjuster a = Adjuster::power(0.4);
  PricePath base = paths::random_multiplicative(1.0, 200, 999);
  auto ref = run_path(a, base, 1.0);

  for (double lambda : {0.5, 2.0, 4.0}) {  // exact in binary
    PricePath scaled;
    for (double v : base.prices) scaled.prices.push_back(lambda * v);
    auto got = run_path(a, scaled, 1.0);
    for (std::size_t t = 0; t < ref.size(); ++t) {
      CHECK(got[t].capital_norm == ref[t].capital_norm);
      CHECK(got[t].price_norm == ref[t].price_norm);
      CHECK(got[t].position == ref[t].position);
    }
  }
  // non-dyadic scaling agrees to rounding
  PricePath tenx;
  for (double v : base.prices) tenx.prices.push_back(10.0 * v);
  auto got = run_path(a, tenx, 1.0);
  for (std::size_t t = 0; t < ref.size(); ++t)
    CHECK(got[t].capital_norm ==
          doctest::Approx(ref[t].capital_norm).epsilon(1e-12));
}

TEST_CASE("zero prices are legal and non-absorbing") {
  Adjuster a = Adjuster::power(0.5);
  PricePath p;
  p.prices = {1.0, 0.0, 2.0, 0.0, 3.0};
  auto trail = run_path(a, p);
  check_floors(a, trail);
  CHECK(trail.back().running_max == 3.0);
}

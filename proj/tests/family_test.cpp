#include <doctest.h>

#include <cmath>

#include "lookback/adjuster.hpp"
#include "lookback/quadrature.hpp"
#include "lookback/transforms.hpp"
#include "test_support.hpp"

using namespace lookback;

namespace {

void check_views_cohere(const Adjuster& a, const std::vector<double>& grid) {
  for (double x : grid) {
    // spine right derivative equals the measure tail
    CHECK(a.spine().right_slope(x) == a.tail(x));
    // Legendre: F'(x) = spine(x) - slope(x) * x
    double legendre = a.spine_value(x) - a.tail(x) * x;
    CHECK(std::abs(a.asla_value(x) - legendre) <=
          1e-12 * std::max(1.0, std::abs(legendre)));
    // ALA tangency on the diagonal
    CHECK(a.ala_value(x, x) == doctest::Approx(a.spine_value(x)).epsilon(1e-14));
    CHECK(a.ala_value(x, 0.0) ==
          doctest::Approx(a.asla_value(x)).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("power family closed forms") {
  Adjuster a = Adjuster::power(0.5);
  CHECK(a.spine_value(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(a.tail(4.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(a.asla_value(4.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.mass_infinity() == 0.0);
  CHECK(a.asla_integral() == 1.0);
  check_views_cohere(a, testing::log_spaced(1.0, 1e6, 50));

  for (double alpha : {0.1, 0.25, 0.5, 0.9}) {
    Adjuster p = Adjuster::power(alpha);
    CHECK(sla_integral_numeric(p.asla()) == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK_THROWS(Adjuster::power(0.0));
  CHECK_THROWS(Adjuster::power(1.0));
  CHECK_THROWS(Adjuster::power(0.5, 1.5));
}

TEST_CASE("power family with cash follows the mixed closed form") {
  double alpha = 0.5, c = 0.5;
  Adjuster a = Adjuster::power(alpha, c);
  CHECK(a.mass_infinity() == c);
  // spine (1-c) X^(1-a) + c X
  CHECK(a.spine_value(4.0) == doctest::Approx(0.5 * 2.0 + 0.5 * 4.0));
  // ALA at (4, 2): c x + (1-c) a X*^(1-a) + (1-c)(1-a) X*^(-a) x
  double expect = c * 2.0 + (1 - c) * alpha * 2.0 + (1 - c) * (1 - alpha) * 0.5 * 2.0;
  CHECK(a.ala_value(4.0, 2.0) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(1.75));
  check_views_cohere(a, testing::log_spaced(1.0, 1e5, 40));
}

TEST_CASE("log family closed forms") {
  for (double alpha : {0.5, 1.0}) {
    Adjuster a = Adjuster::log_family(alpha);
    double e0 = std::exp(1.0 + alpha);
    // below the knee the spine is the identity and the view is zero
    CHECK(a.spine_value(0.5 * e0) == 0.5 * e0);
    CHECK(a.asla_value(0.999 * e0) == 0.0);
    CHECK(a.tail(0.5 * e0) == 1.0);
    // at the knee: continuous spine, atom of mass alpha/(1+alpha)
    CHECK(a.spine_value(e0) == doctest::Approx(e0).epsilon(1e-12));
    CHECK(a.tail(e0) == doctest::Approx(1.0 / (1.0 + alpha)).epsilon(1e-12));
    // the published view formula
    double y = 3.0 * e0;
    double expect = alpha * std::pow(1.0 + alpha, alpha) * y /
                    std::pow(std::log(y), 1.0 + alpha);
    CHECK(a.asla_value(y) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(sla_integral_numeric(a.asla()) == doctest::Approx(1.0).epsilon(1e-8));
    check_views_cohere(a, testing::log_spaced(1.0, 1e8, 60));
  }
  CHECK_THROWS(Adjuster::log_family(0.0));
}

TEST_CASE("threshold family") {
  Adjuster a = Adjuster::threshold(2.0);
  CHECK(a.tail(1.5) == 1.0);
  CHECK(a.tail(2.0) == 0.0);
  CHECK(a.spine_value(1.5) == 1.5);
  CHECK(a.spine_value(5.0) == 2.0);
  CHECK(a.asla_value(1.999) == 0.0);
  CHECK(a.asla_value(2.0) == 2.0);
  CHECK(a.asla_integral() == 1.0);
  CHECK(sla_integral_numeric(a.asla()) == doctest::Approx(1.0).epsilon(1e-10));
  check_views_cohere(a, {1.0, 1.5, 2.0, 3.0, 10.0});

  // u = 1 is the point mass at 1
  Adjuster one = Adjuster::threshold(1.0);
  CHECK(one.spine_value(100.0) == 1.0);
  CHECK(one.tail(1.0) == 0.0);
  DiscreteMeasure m = one.to_discrete();
  REQUIRE(m.atoms().size() == 1);
  CHECK(m.atoms()[0].location == 1.0);
}

TEST_CASE("cash mix composes views") {
  Adjuster inner = Adjuster::threshold(2.0);
  Adjuster a = Adjuster::cash_mix(0.3, inner);
  CHECK(a.mass_infinity() == doctest::Approx(0.3));
  CHECK(a.tail(1.5) == doctest::Approx(1.0));
  CHECK(a.tail(3.0) == doctest::Approx(0.3));
  CHECK(a.spine_value(3.0) == doctest::Approx(0.3 * 3.0 + 0.7 * 2.0));
  CHECK(a.asla_value(3.0) == doctest::Approx(0.7 * 2.0));
  CHECK(a.asla_integral() == doctest::Approx(0.7));
  check_views_cohere(a, {1.0, 1.5, 2.0, 4.0, 44.0});

  // piecewise inner spines stay piecewise under mixing
  CHECK(a.spine().is_piecewise_linear());
  // discrete round trip through the mix
  DiscreteMeasure m = a.to_discrete();
  REQUIRE(m.atoms().size() == 1);
  CHECK(m.atoms()[0].location == 2.0);
  CHECK(m.atoms()[0].mass == doctest::Approx(0.7));
  CHECK(m.mass_infinity() == doctest::Approx(0.3));
}

TEST_CASE("quantile discretization keeps family atoms exact") {
  Adjuster p = Adjuster::power(0.5);
  DiscreteMeasure mp = p.to_discrete(256);
  CHECK(mp.atoms().front().location == 1.0);
  CHECK(mp.atoms().front().mass == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mp.mass_infinity() == 0.0);
  CHECK(mp.total_atom_mass() == doctest::Approx(1.0).epsilon(1e-12));
  // discretized tails track the closed form
  Adjuster pd = Adjuster::discrete(mp);
  for (double x : {1.0, 2.0, 8.0, 100.0})
    CHECK(pd.tail(x) == doctest::Approx(p.tail(x)).epsilon(0.02));
  for (double x : {1.0, 2.0, 8.0, 100.0})
    CHECK(pd.spine_value(x) == doctest::Approx(p.spine_value(x)).epsilon(0.02));

  Adjuster lg = Adjuster::log_family(0.5);
  DiscreteMeasure ml = lg.to_discrete(256);
  double e0 = std::exp(1.5);
  CHECK(ml.atoms().front().location == doctest::Approx(e0).epsilon(1e-14));
  CHECK(ml.atoms().front().mass ==
        doctest::Approx(0.5 / 1.5).epsilon(1e-12));
  CHECK(ml.total_atom_mass() == doctest::Approx(1.0).epsilon(1e-12));
  Adjuster ld = Adjuster::discrete(ml);
  for (double x : {1.0, 5.0, 50.0, 1000.0})
    CHECK(ld.spine_value(x) == doctest::Approx(lg.spine_value(x)).epsilon(0.02));
}

TEST_CASE("vanishing ratio: F(y)/y decreases toward zero") {
  Rng rng(5);
  std::vector<Adjuster> zoo{Adjuster::power(0.3), Adjuster::log_family(1.0),
                            Adjuster::threshold(7.0),
                            Adjuster::discrete(testing::random_measure(rng, 20, false))};
  for (const Adjuster& a : zoo) {
    REQUIRE(a.mass_infinity() == 0.0);
    // monotone decay only holds past the measure's support
    double support_end = 1.0;
    if (const auto* d = std::get_if<DiscreteFamily>(&a.family()))
      support_end = d->measure.atoms().back().location;
    int first = std::max(2, static_cast<int>(std::ceil(std::log10(support_end))) + 1);
    double prev = 2.0;
    for (int k = first; k <= first + 6; ++k) {
      double y = std::pow(10.0, k);
      double ratio = a.asla_value(y) / y;
      CHECK(ratio <= prev + 1e-15);
      prev = ratio;
    }
    CHECK(prev < 0.05);
  }
}

TEST_CASE("incomparability of distinct discrete ALAs") {
  Rng rng(99);
  int found_both = 0;
  for (int it = 0; it < 25; ++it) {
    DiscreteMeasure p1 = testing::random_measure(rng, 16);
    DiscreteMeasure p2 = testing::random_measure(rng, 16);
    Adjuster a1 = Adjuster::discrete(p1), a2 = Adjuster::discrete(p2);
    // sample set: atoms of both, midpoints, and far tail points
    std::vector<double> xs{1.0};
    for (const Atom& a : p1.atoms()) xs.push_back(a.location);
    for (const Atom& a : p2.atoms()) xs.push_back(a.location);
    std::sort(xs.begin(), xs.end());
    std::vector<double> samples;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      samples.push_back(xs[i]);
      if (i + 1 < xs.size()) samples.push_back(0.5 * (xs[i] + xs[i + 1]));
    }
    samples.push_back(xs.back() * 2.0);
    samples.push_back(xs.back() * 100.0);
    bool first_wins = false, second_wins = false;
    for (double xstar : samples) {
      for (double x : {0.0, xstar}) {
        double d = a1.ala_value(xstar, x) - a2.ala_value(xstar, x);
        if (d > 1e-12) first_wins = true;
        if (d < -1e-12) second_wins = true;
      }
    }
    if (first_wins && second_wins) ++found_both;
  }
  // random measures are distinct with overwhelming probability; every
  // distinct pair must be incomparable
  CHECK(found_both >= 24);
}

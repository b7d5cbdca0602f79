#include <doctest.h>

#include <cmath>

#include "lookback/adjuster.hpp"
#include "lookback/transforms.hpp"
#include "lookback/validation.hpp"
#include "test_support.hpp"

using namespace lookback;

namespace {

bool has_issue(const ValidationReport& r, const std::string& what) {
  for (const auto& i : r.issues)
    if (i.condition == what) return true;
  return false;
}

}  // namespace

TEST_CASE("valid spines pass") {
  Spine root([](double x) { return std::sqrt(x); },
             [](double x) { return 0.5 / std::sqrt(x); }, 0.0);
  CHECK(validate_spine(root).valid());

  for (const Adjuster& a :
       {Adjuster::power(0.3), Adjuster::log_family(1.0),
        Adjuster::threshold(4.0), Adjuster::power(0.5, 0.4)})
    CHECK(validate_spine(a.spine()).valid());

  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    Spine s = measure_to_spine(testing::random_measure(rng, 24));
    CHECK(validate_spine(s).valid());
  }
}

TEST_CASE("convexity is caught with a witness") {
  ValidationReport r = validate_spine(
      [](double x) { return x * x; }, testing::log_spaced(1.0, 100.0, 30));
  CHECK_FALSE(r.valid());
  CHECK(has_issue(r, "concave"));
}

TEST_CASE("slope at 1 above one is caught") {
  ValidationReport r = validate_spine(
      [](double x) { return 2.0 * x - 1.0; },
      testing::log_spaced(1.0, 100.0, 30));
  CHECK_FALSE(r.valid());
  CHECK(has_issue(r, "slope_at_1"));
  CHECK_FALSE(has_issue(r, "value_at_1"));  // F(1) = 1 holds for 2X-1
}

TEST_CASE("wrong value at 1") {
  PiecewiseLinear p({1.0, 2.0}, {0.7, 1.2}, {0.5, 0.1});
  ValidationReport r = validate_spine(Spine(p));
  CHECK(has_issue(r, "value_at_1"));
}

TEST_CASE("decreasing piecewise spine is caught exactly") {
  PiecewiseLinear p({1.0, 2.0}, {1.0, 0.5}, {-0.5, 0.0});
  ValidationReport r = validate_spine(Spine(p));
  CHECK(has_issue(r, "increasing"));
}

TEST_CASE("alas from adjusters validate") {
  for (const Adjuster& a :
       {Adjuster::power(0.5), Adjuster::threshold(2.0),
        Adjuster::cash_mix(0.25, Adjuster::power(0.5))})
    CHECK(validate_ala(a.ala()).valid());
}

TEST_CASE("non-affine and wrong-slope surfaces are caught") {
  std::vector<double> grid = testing::log_spaced(1.0, 1000.0, 25);
  // quadratic in x: not a tangent surface
  ValidationReport r1 = validate_ala(
      [](double xs, double x) { return 1.0 + (x * x) / (xs * xs); }, grid);
  CHECK(has_issue(r1, "linear_in_x"));

  // affine in x but with half the required slope
  Adjuster base = Adjuster::power(0.5);
  ValidationReport r2 = validate_ala(
      [&base](double xs, double x) {
        return base.spine_value(xs) + 0.5 * base.tail(xs) * (x - xs);
      },
      grid);
  CHECK(has_issue(r2, "slope_agreement"));
}

#include <doctest.h>

#include <cmath>
#include <limits>

#include "lookback/adjuster.hpp"
#include "lookback/errors.hpp"
#include "lookback/quadrature.hpp"

using namespace lookback;

TEST_CASE("finite-interval quadrature") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate([](double) { return 1.0; }, 3.0, 3.0) == 0.0);
  // integrable kink
  CHECK(integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0) ==
        doctest::Approx(0.3 * 0.3 / 2 + 0.7 * 0.7 / 2).epsilon(1e-12));
}

TEST_CASE("sla_integral basic values") {
  CHECK(sla_integral([](double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sla_integral([](double) { return 0.0; }) == 0.0);
  // alpha y^(1-alpha) integrates to exactly 1
  CHECK(sla_integral([](double y) { return 0.5 * std::sqrt(y); }) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("sla_integral flags linear growth as divergent") {
  double v = sla_integral([](double y) { return y; });
  CHECK(std::isinf(v));
  double v2 = sla_integral([](double y) { return 0.25 * y + 3.0; });
  CHECK(std::isinf(v2));
}

TEST_CASE("sla_integral of step views matches the closed form") {
  StepFunction step(0.0, {2.0, 4.0}, {1.0, 2.0});
  ScaledAsla view(step);
  REQUIRE(view.known_integral().has_value());
  CHECK(*view.known_integral() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(sla_integral_numeric(view) == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(sla_integral(view) == *view.known_integral());
}

TEST_CASE("heavy log-family tails need the analytic remainder") {
  Adjuster log_adj = Adjuster::log_family(1.0);
  // the hybrid head+tail route certifies the unit integral
  CHECK(sla_integral_numeric(log_adj.asla()) ==
        doctest::Approx(1.0).epsilon(1e-9));
  // the raw evaluator alone cannot: decade contributions decay like 1/d^2
  // while F(y)/y stays above delta, so the pragmatic rule calls it divergent
  ScaledAsla raw(
      [&log_adj](double y) { return log_adj.asla_value(y); }, {}, std::nullopt);
  CHECK(std::isinf(sla_integral_numeric(raw)));
}

TEST_CASE("uncertifiable integrands raise an accuracy error") {
  // flat decades but a ratio always below delta: neither certificate applies
  auto f = [](double y) { return 1e-8 * y / std::log(M_E + y); };
  CHECK_THROWS_AS(sla_integral(f), AccuracyError);
}

TEST_CASE("tail_integral hint is consistent with quadrature") {
  Adjuster pow = Adjuster::power(0.25);
  ScaledAsla view = pow.asla();
  REQUIRE(view.tail_integral());
  for (double y0 : {1.0, 3.0, 100.0}) {
    double head = integrate(
        [&](double y) { return view(y) / y / y; }, y0, 1e9);
    double analytic = view.tail_integral()(y0);
    // remainder beyond 1e9 still counts at alpha = 0.25
    CHECK(analytic > head);
    CHECK(head + view.tail_integral()(1e9) ==
          doctest::Approx(analytic).epsilon(1e-8));
  }
}

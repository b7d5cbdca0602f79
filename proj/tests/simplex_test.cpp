#include <doctest.h>

#include "lookback/simplex.hpp"

using namespace lookback;

TEST_CASE("two-variable vertex optimum") {
  // min x + y s.t. x + 2y >= 4, 3x + y >= 6
  LpResult r = solve_lp_min({1.0, 1.0}, {{1.0, 2.0}, {3.0, 1.0}}, {4.0, 6.0});
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == doctest::Approx(14.0 / 5.0));
  CHECK(r.x[0] == doctest::Approx(8.0 / 5.0));
  CHECK(r.x[1] == doctest::Approx(6.0 / 5.0));
}

TEST_CASE("binding nonnegativity") {
  // min x - 2y s.t. -y >= -3 (y <= 3), x >= 0 implicit
  LpResult r = solve_lp_min({1.0, -2.0}, {{0.0, -1.0}}, {-3.0});
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == doctest::Approx(-6.0));
  CHECK(r.x[0] == doctest::Approx(0.0));
  CHECK(r.x[1] == doctest::Approx(3.0));
}

TEST_CASE("infeasible system") {
  // x >= 2 and x <= 1
  LpResult r = solve_lp_min({1.0}, {{1.0}, {-1.0}}, {2.0, -1.0});
  CHECK(r.status == LpResult::Status::Infeasible);
}

TEST_CASE("unbounded objective") {
  LpResult r = solve_lp_min({-1.0}, {{1.0}}, {1.0});
  CHECK(r.status == LpResult::Status::Unbounded);
}

TEST_CASE("degenerate constraints do not cycle") {
  // several redundant rows through the same vertex
  LpResult r = solve_lp_min(
      {1.0, 1.0},
      {{1.0, 1.0}, {2.0, 2.0}, {1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}},
      {2.0, 4.0, 2.0, 1.0, 1.0});
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == doctest::Approx(2.0));
}

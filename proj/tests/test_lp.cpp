#include <doctest.h>

#include "defdyn/lp.hpp"

using namespace defdyn;

TEST_CASE("feasible point of a small system") {
  // x + y = 1, x - y = 0
  auto const x = feasible_point({{1, 1}, {1, -1}}, {1, 0});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rational(1, 2));
  CHECK((*x)[1] == Rational(1, 2));
}

TEST_CASE("infeasible systems") {
  CHECK(!feasible_point({{1, 1}}, {-1}).has_value());
  CHECK(!feasible_point({{1, 0}, {1, 0}}, {1, 2}).has_value());
}

TEST_CASE("redundant rows and negative right-hand sides") {
  auto const x = feasible_point({{1, 1, 1}, {2, 2, 2}, {-1, 0, 0}}, {3, 6, -1});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 1);
  CHECK((*x)[0] + (*x)[1] + (*x)[2] == 3);
  for (auto const& v : *x) {
    CHECK(v >= 0);
  }
}

TEST_CASE("degenerate cycling example terminates") {
  // Beale's example as equalities with slacks
  std::vector<std::vector<Rational>> a = {
      {Rational(1, 4), -8, -1, 9, 1, 0, 0},
      {Rational(1, 2), -12, Rational(-1, 2), 3, 0, 1, 0},
      {0, 0, 1, 0, 0, 0, 1},
  };
  auto const x = feasible_point(a, {0, 0, 1});
  REQUIRE(x.has_value());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < 7; ++j) {
      s += a[i][j] * (*x)[j];
    }
    CHECK(s == (i == 2 ? 1 : 0));
  }
}

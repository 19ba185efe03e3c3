#include <doctest.h>

#include <numbers>
#include <stdexcept>

#include "pstneps/rational_angle.hpp"

using namespace pstneps;

TEST_CASE("normalization") {
  const RationalAngle t(4, 6);
  CHECK(t.num() == 2);
  CHECK(t.den() == 3);
  CHECK(RationalAngle(1, -2) == RationalAngle(-1, 2));
  CHECK(RationalAngle(0, 5) == RationalAngle());
  CHECK_THROWS_AS(RationalAngle(1, 0), std::invalid_argument);
}

TEST_CASE("value and arithmetic") {
  CHECK(RationalAngle(1, 2).value() == doctest::Approx(std::numbers::pi / 2));
  CHECK(RationalAngle(1, 4) + RationalAngle(1, 4) == RationalAngle(1, 2));
  CHECK(RationalAngle(1, 3).times(6) == RationalAngle(2, 1));
  CHECK(-RationalAngle(1, 2) == RationalAngle(-1, 2));
}

TEST_CASE("parse round trip") {
  CHECK(RationalAngle::parse("3/4") == RationalAngle(3, 4));
  CHECK(RationalAngle::parse("2") == RationalAngle(2, 1));
  CHECK(RationalAngle::parse("-1/2") == RationalAngle(-1, 2));
  CHECK(!RationalAngle::parse("1/0"));
  CHECK(!RationalAngle::parse("a/b"));
  CHECK(!RationalAngle::parse("1/2/3"));
  CHECK(RationalAngle::parse(RationalAngle(5, 8).str()) == RationalAngle(5, 8));
}

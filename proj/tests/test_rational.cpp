#include <doctest.h>

#include "lagtor/rational.hpp"

using namespace lagtor;

TEST_CASE("rational arithmetic and normalisation") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(1, 3) - Rational(1, 3)).is_zero());
  CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
  CHECK((Rational(1, 2) / Rational(1, 4)) == Rational(2));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(4, 2).floor() == 2);
}

TEST_CASE("rational ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(5) > Rational(9, 2));
}

TEST_CASE("rational parsing and printing") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-1/2") == Rational(-1, 2));
  CHECK(Rational::parse("141/100") == Rational(141, 100));
  CHECK(Rational::parse("6.5") == Rational(13, 2));
  CHECK(Rational::parse("-0.25") == Rational(-1, 4));
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(-3).str() == "-3");
  CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
  CHECK_THROWS_AS(Rational::parse("abc"), InputError);
  CHECK_THROWS_AS(Rational::parse(""), InputError);
}

TEST_CASE("interval scaling") {
  RatInterval i{Rational(1), Rational(2)};
  RatInterval neg = i.scaled(Rational(-3));
  CHECK(neg.lo == Rational(-6));
  CHECK(neg.hi == Rational(-3));
  CHECK(RatInterval{Rational(-1), Rational(1)}.contains_zero());
  CHECK_FALSE(RatInterval{Rational(1, 100), Rational(1)}.contains_zero());
}

#include <doctest.h>

#include "wcounts/rational.hpp"

using wcounts::Rational;

TEST_CASE("rational arithmetic is normalized and exact") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, -4) == Rational(3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
    CHECK((Rational(1) / Rational(7)) == Rational(1, 7));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(2).pow(-2) == Rational(1, 4));
    CHECK(Rational(5, 3) > Rational(3, 2));
}

TEST_CASE("rational parsing") {
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-3/2") == Rational(-3, 2));
    CHECK(Rational::parse("42") == Rational(42));
    CHECK(Rational::parse("0") == Rational(0));
    CHECK_THROWS_AS(Rational::parse("1/0"), wcounts::validation_error);
    CHECK_THROWS_AS(Rational::parse("a/b"), wcounts::validation_error);
    CHECK_THROWS_AS(Rational::parse(""), wcounts::validation_error);
    CHECK(Rational::parse("3/2").str() == "3/2");
    CHECK(Rational::parse("4/2").str() == "2");
}

TEST_CASE("rational overflow is detected, never wrapped") {
    Rational big(INT64_MAX / 2);
    CHECK_THROWS_AS(big * Rational(8), wcounts::overflow_error);
    CHECK_NOTHROW(big + big); // num = INT64_MAX - 1
}

#include "towerdyn/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace towerdyn;

TEST_CASE("construction reduces and keeps the denominator positive") {
    Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);

    // no drift over many operations
    Rational sum;
    for (long long k = 1; k <= 50; ++k) sum += Rational(1, k * (k + 1));
    CHECK(sum == Rational(50, 51));
}

TEST_CASE("ordering by cross multiplication") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(max(Rational(3, 4), Rational(2, 3)) == Rational(3, 4));
}

TEST_CASE("powers of two and dyadic queries") {
    CHECK(Rational::pow2(3) == Rational(8));
    CHECK(Rational::pow2(0) == Rational(1));
    CHECK(Rational::pow2(-4) == Rational(1, 16));
    CHECK(Rational(5, 8).is_dyadic());
    CHECK(Rational(5, 8).dyadic_exponent() == 3);
    CHECK(Rational(7).is_dyadic());
    CHECK_FALSE(Rational(1, 3).is_dyadic());
    CHECK_THROWS_AS(Rational(1, 3).dyadic_exponent(), std::invalid_argument);
}

TEST_CASE("integer exponentiation") {
    CHECK(Rational(3, 4).pow(3) == Rational(27, 64));
    CHECK(Rational(3, 4).pow(-2) == Rational(16, 9));
    CHECK(Rational(3, 4).pow(0) == Rational(1));
    CHECK_THROWS_AS(Rational(0).pow(-1), std::domain_error);
}

TEST_CASE("string round trips") {
    CHECK(Rational(-5, 4).to_string() == "-5/4");
    CHECK(Rational(3).to_string() == "3");
    CHECK(Rational::parse("-5/4") == Rational(-5, 4));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("3/2^4") == Rational(3, 16));
    CHECK(Rational::parse("1/2") == Rational(1, 2));
    CHECK(Rational(5, 8).to_dyadic_string() == "5/2^3");
    CHECK(Rational(2).to_dyadic_string() == "2");
    CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("floor_log2") {
    CHECK(floor_log2(1) == 0);
    CHECK(floor_log2(2) == 1);
    CHECK(floor_log2(3) == 1);
    CHECK(floor_log2(1024) == 10);
    CHECK_THROWS_AS(floor_log2(0), std::invalid_argument);
}

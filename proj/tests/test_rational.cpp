#include <doctest.h>

#include <random>

#include "vab/rational.hpp"

using vab::Rational;

TEST_CASE("rational construction and canonical form") {
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK(Rational(-2, 4).str() == "-1/2");
    CHECK(Rational(2, -4).str() == "-1/2");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(6, 3).str() == "2");
    CHECK_THROWS_AS(Rational(1, 0), vab::input_error);
}

TEST_CASE("rational parse") {
    CHECK(Rational::parse("5").str() == "5");
    CHECK(Rational::parse("-7/3").str() == "-7/3");
    bool unreduced = false;
    CHECK(Rational::parse("2/4", &unreduced).str() == "1/2");
    CHECK(unreduced);
    CHECK(Rational::parse("1/2", &unreduced).str() == "1/2");
    CHECK(!unreduced);
    CHECK_THROWS_AS(Rational::parse("1/0"), vab::input_error);
    CHECK_THROWS_AS(Rational::parse(""), vab::input_error);
    CHECK_THROWS_AS(Rational::parse("a/b"), vab::input_error);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), vab::input_error);
    CHECK_THROWS_AS(Rational::parse("1/-2"), vab::input_error);
}

TEST_CASE("floor and congruence") {
    CHECK(Rational(7, 2).floor_long() == 3);
    CHECK(Rational(-7, 2).floor_long() == -4);
    CHECK(Rational(3).floor_long() == 3);
    CHECK(Rational(3, 2).congruent_mod_1(Rational(-1, 2)));
    CHECK(!Rational(3, 2).congruent_mod_1(Rational(0)));
}

TEST_CASE("binomial with rational upper argument") {
    using vab::binomial;
    CHECK(binomial(Rational(4), 2) == Rational(6));
    CHECK(binomial(Rational(-1), 3) == Rational(-1));
    CHECK(binomial(Rational(-2), 2) == Rational(3));
    CHECK(binomial(Rational(1, 2), 2) == Rational(-1, 8));
    CHECK(binomial(Rational(-3, 2), 1) == Rational(-3, 2));
    CHECK(binomial(Rational(3), 5) == Rational(0));
    CHECK(binomial(Rational(3), 0) == Rational(1));
}

TEST_CASE("field axioms on random values") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
    auto rnd = [&]() { return Rational(num(rng), den(rng)); };
    for (int i = 0; i < 300; ++i) {
        Rational a = rnd(), b = rnd(), c = rnd();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b - b == a);
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}

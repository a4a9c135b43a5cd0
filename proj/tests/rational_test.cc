#include "ratasp/rational.hh"

#include <doctest.h>

#include <vector>

using namespace ratasp;

namespace {

Rational q(std::int64_t p, std::int64_t d) { return normalize(p, d); }

} // namespace

TEST_CASE("normalize") {
    SUBCASE("reduces to lowest terms") {
        auto r = normalize(6, 8);
        CHECK(r.num() == 3);
        CHECK(r.den() == 4);
    }
    SUBCASE("moves the sign to the numerator") {
        auto r = normalize(3, -4);
        CHECK(r.num() == -3);
        CHECK(r.den() == 4);
        CHECK(normalize(-3, -4) == q(3, 4));
    }
    SUBCASE("zero is 0/1") {
        auto r = normalize(0, -7);
        CHECK(r.num() == 0);
        CHECK(r.den() == 1);
        CHECK(r == Rational{});
    }
    SUBCASE("zero denominator") { CHECK_THROWS_AS(normalize(1, 0), ZeroDenominator); }
}

TEST_CASE("field operations") {
    CHECK(q(1, 2) + q(1, 3) == q(5, 6));
    CHECK(q(1, 2) - q(1, 3) == q(1, 6));
    CHECK(q(2, 3) * q(3, 4) == q(1, 2));
    CHECK(q(2, 3) / q(4, 9) == q(3, 2));
    CHECK(-q(2, 3) == q(-2, 3));
    CHECK(q(1, 2) + q(1, 2) == Rational(1));
    CHECK((q(1, 2) + q(1, 2)).den() == 1);
    CHECK_THROWS_AS(q(1, 2) / Rational{}, UndefinedArithmetic);
    CHECK(add(q(1, 4), q(1, 4)) == q(1, 2));
    CHECK(sub(q(1, 4), q(1, 2)) == q(-1, 4));
    CHECK(mul(q(-1, 4), q(-4, 1)) == Rational(1));
    CHECK(div(Rational(1), Rational(3)) == q(1, 3));
    CHECK(neg(Rational{}) == Rational{});
}

TEST_CASE("exact sums that floating point gets wrong") {
    // 0.1 + 0.2 = 0.3 exactly
    CHECK(q(1, 10) + q(2, 10) == q(3, 10));
    // 1 + 1e-16 + 1e-16 in every order
    auto tiny = normalize(1, Integer("10000000000000000"));
    auto one = Rational(1);
    CHECK((one + tiny) + tiny == one + (tiny + tiny));
    CHECK((one + tiny) + tiny == (tiny + one) + tiny);
    CHECK(one + tiny + tiny != one);
}

TEST_CASE("no magnitude limit") {
    Integer big = 1;
    for (int k = 0; k < 200; ++k) { big *= 10; }
    auto a = normalize(big + 1, big);
    auto b = normalize(big - 1, big);
    CHECK(a + b == Rational(2));
    CHECK((a * b).den() == big * big);
    CHECK(a - b == normalize(2, big));
}

TEST_CASE("comparison") {
    CHECK(q(1, 3) < q(1, 2));
    CHECK(q(-1, 2) < q(-1, 3));
    CHECK(q(2, 4) == q(1, 2));
    CHECK(compare(q(3, 4), q(2, 3)) > 0);
    CHECK(compare(q(2, 3), q(3, 4)) < 0);
    CHECK(compare(q(6, 9), q(2, 3)) == 0);
}

TEST_CASE("rounding helpers") {
    CHECK(floor(q(7, 2)) == Rational(3));
    CHECK(floor(q(-7, 2)) == Rational(-4));
    CHECK(ceil(q(7, 2)) == Rational(4));
    CHECK(ceil(q(-7, 2)) == Rational(-3));
    CHECK(truncate(q(-7, 2)) == Rational(-3));
    CHECK(truncate(q(7, 2)) == Rational(3));
    SUBCASE("round half away from zero") {
        CHECK(round(q(5, 2)) == Rational(3));
        CHECK(round(q(-5, 2)) == Rational(-3));
        CHECK(round(q(7, 3)) == Rational(2));
        CHECK(round(q(-1, 2)) == Rational(-1));
    }
    CHECK(abs(q(-3, 4)) == q(3, 4));
    CHECK(floor(Rational(5)) == Rational(5));
}

TEST_CASE("integer division truncates toward zero") {
    CHECK(integer_divide(Rational(7), Rational(2)) == Rational(3));
    CHECK(integer_divide(Rational(-7), Rational(2)) == Rational(-3));
    CHECK(integer_divide(Rational(7), Rational(-2)) == Rational(-3));
    CHECK_THROWS_AS(integer_divide(Rational(7), Rational(0)), UndefinedArithmetic);
}

TEST_CASE("from_decimal") {
    CHECK(from_decimal("0.5") == q(1, 2));
    CHECK(from_decimal("3") == Rational(3));
    CHECK(from_decimal("-0.25") == q(-1, 4));
    CHECK(from_decimal("0.000001") == q(1, 1000000));
    SUBCASE("extra places round half away from zero") {
        CHECK(from_decimal("0.1234567", 6) == q(123457, 1000000));
        CHECK(from_decimal("0.1234564", 6) == q(123456, 1000000));
        CHECK(from_decimal("0.25", 1) == q(3, 10));
        CHECK(from_decimal("-0.25", 1) == q(-3, 10));
        CHECK(from_decimal("2.5", 0) == Rational(3));
    }
    SUBCASE("malformed") {
        for (auto text : {"", ".5", "1.", "1.2.3", "a", "-", "1e5", "--1"}) {
            CAPTURE(text);
            CHECK_THROWS_AS(from_decimal(text), MalformedDecimal);
        }
    }
}

TEST_CASE("to_decimal_string") {
    CHECK(to_decimal_string(q(1, 2)) == "0.5");
    CHECK(to_decimal_string(Rational(3)) == "3");
    CHECK(to_decimal_string(q(7, 225), 6) == "0.031111");
    CHECK(to_decimal_string(q(2, 3), 6) == "0.666667");
    CHECK(to_decimal_string(q(-2, 3), 6) == "-0.666667");
    CHECK(to_decimal_string(q(2, 3), 0) == "1");
    CHECK(to_decimal_string(q(1, 8), 2) == "0.13");
    CHECK(to_decimal_string(q(-1, 8), 2) == "-0.13");
    SUBCASE("values rounding to zero print without a sign") {
        CHECK(to_decimal_string(q(-1, 10000000), 6) == "0");
    }
}

TEST_CASE("fraction rendering") {
    CHECK(q(3, 4).str() == "3/4");
    CHECK(q(-3, 4).str() == "-3/4");
    CHECK(q(4, 2).str() == "2");
    CHECK(Rational{}.str() == "0");
}

TEST_CASE("lcm_denominators") {
    std::vector<Rational> weights{Rational(2), q(3, 4), Rational(3)};
    CHECK(lcm_denominators(weights) == 4);
    std::vector<Rational> one{Rational(1)};
    CHECK(lcm_denominators(one) == 1);
    std::vector<Rational> mixed{q(1, 6), q(1, 4)};
    CHECK(lcm_denominators(mixed) == 12);
    CHECK(lcm_denominators({}) == 1);
}

TEST_CASE("parse_integer is decimal") {
    CHECK(parse_integer("025") == 25);
    CHECK(parse_integer("-010") == -10);
    CHECK(parse_integer("000") == 0);
    CHECK(parse_integer("123456789012345678901234567890") == Integer("123456789012345678901234567890"));
    CHECK_THROWS_AS(parse_integer(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_integer("0x10"), std::invalid_argument);
}

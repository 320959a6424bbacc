#include <doctest.h>

#include "furst/bigint.hpp"
#include "furst/error.hpp"
#include "furst/interval.hpp"
#include "furst/rng.hpp"

using namespace furst;

TEST_SUITE("bigint") {

TEST_CASE("parse and print round trip") {
    CHECK(to_string(parse_bigint("123456789012345678901234567890")) == "123456789012345678901234567890");
    CHECK(to_string(parse_rational("6/8")) == "3/4");
    CHECK(to_string(parse_rational("5")) == "5/1");
    CHECK(to_string(parse_rational("-2/6")) == "-1/3");
    CHECK_THROWS_AS(parse_bigint("12a"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const BigInt p = rng.below(furst::pow(BigInt(10), 40)) - furst::pow(BigInt(10), 39);
        const BigInt q = rng.below(furst::pow(BigInt(10), 30)) + 1;
        const Rational x = make_rational(p, q);
        CHECK(parse_rational(to_string(x)) == x);
        CHECK(parse_bigint(to_string(p)) == p);
    }
}

TEST_CASE("floors and norms") {
    CHECK(floor(Rational(-1, 2)) == -1);
    CHECK(ceil(Rational(-1, 2)) == 0);
    CHECK(frac(Rational(-1, 4)) == Rational(3, 4));
    CHECK(nearest_int_norm(Rational(7, 4)) == Rational(1, 4));
    CHECK(nearest_int_norm(Rational(1, 2)) == Rational(1, 2));
    CHECK(checked_pow_u64(2, 62) == (std::uint64_t{1} << 62));
    CHECK(checked_pow_u64(2, 64) == 0);
    CHECK(checked_pow_u64(10, 18) == 1'000'000'000'000'000'000ull);
}

}

TEST_SUITE("interval") {

TEST_CASE("arithmetic encloses") {
    const RationalInterval x(Rational(1, 3), Rational(1, 2));
    const RationalInterval y(Rational(-1), Rational(2));
    const auto p = x * y;
    CHECK(p.lo == Rational(-1, 2));
    CHECK(p.hi == 1);
    CHECK_THROWS_AS(x / y, Error);
    const auto n = nearest_int_norm(RationalInterval(Rational(9, 10), Rational(11, 10)));
    CHECK(n.lo == 0);
    CHECK(n.hi == Rational(1, 10));
    const auto h = nearest_int_norm(RationalInterval(Rational(2, 5), Rational(3, 5)));
    CHECK(h.lo == Rational(2, 5));
    CHECK(h.hi == Rational(1, 2));
}

TEST_CASE("log enclosures contain the value") {
    for (unsigned long bits : {64ul, 128ul, 512ul}) {
        const auto r = log_ratio_enclosure(2, 3, bits);
        CHECK(r.lo < r.hi);
        CHECK(to_double(r.lo) == doctest::Approx(0.6309297535714574));
        CHECK(r.width() < Rational(1, 1 << 20));
    }
}

TEST_CASE("certified floors") {
    CHECK(certified_floor_pow(101, 0.5) == 10);
    CHECK(certified_floor_pow(BigInt("1000000000000000"), 2.0) == BigInt("1000000000000000000000000000000"));
    CHECK(certified_floor_pow(100, 0.5) == 10);  // exact square root
    CHECK(certified_floor_exp(std::log(1e6)) == 999999);
}

}

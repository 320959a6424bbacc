#include <doctest.h>

#include <algorithm>

#include "furst/circle.hpp"
#include "furst/error.hpp"
#include "furst/rng.hpp"

using namespace furst;
using namespace furst::circle;

namespace {

PointSet set_of(std::initializer_list<const char*> xs) {
    std::vector<Rational> v;
    for (const char* x : xs) {
        v.push_back(parse_rational(x));
    }
    return PointSet::from_values(v);
}

}  // namespace

TEST_SUITE("circle") {

TEST_CASE("angles reduce") {
    CHECK(Angle(7, 3).str() == "1/3");
    CHECK(Angle(-1, 4).str() == "3/4");
    CHECK_THROWS_AS(Angle(1, 0), Error);
    CHECK_THROWS_AS(Angle(Rational(1)), Error);
    CHECK(Angle::parse("4/6").num() == 2);
}

TEST_CASE("frac_mul") {
    CHECK(frac_mul(12, Angle(5, 7)) == Angle(4, 7));
    CHECK(frac_mul(7, Angle(5, 7)) == Angle(0, 1));
    CHECK(frac_mul(1, Angle(3, 8)) == Angle(3, 8));
}

TEST_CASE("property: frac_mul composes") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const Angle x(from_u64(rng.below(1000)), from_u64(rng.range(1, 1000)));
        const BigInt q1 = from_u64(rng.range(1, 1'000'000));
        const BigInt q2 = from_u64(rng.range(1, 1'000'000));
        CHECK(frac_mul(q1 * q2, x) == frac_mul(q1, frac_mul(q2, x)));
    }
}

TEST_CASE("sigma_alpha") {
    CHECK(sigma_alpha({2, 3}, 4, Angle(1, 101)).values() ==
          set_of({"1/101", "2/101", "3/101", "4/101"}).values());
    CHECK(sigma_alpha({2, 3}, 10, Angle(1, 101)).size() == 7);
    CHECK(sigma_alpha({2, 3}, 10, Angle(1, 2)).values() == set_of({"0", "1/2"}).values());
}

TEST_CASE("dispersion") {
    CHECK(dispersion(set_of({"1/4", "3/4"})) == Rational(1, 4));
    CHECK(dispersion(set_of({"0"})) == 1);
    CHECK(dispersion(set_of({"0"}), Metric::circular) == Rational(1, 2));
    CHECK(dispersion(set_of({"0", "1/2"})) == Rational(1, 2));
    CHECK(dispersion(set_of({"0", "1/2"}), Metric::circular) == Rational(1, 4));
    CHECK_THROWS_AS(dispersion(PointSet()), Error);
}

TEST_CASE("property: dispersion covers random probes and ignores order") {
    Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Rational> pts;
        const auto n = rng.range(1, 30);
        for (std::uint64_t i = 0; i < n; ++i) {
            pts.push_back(make_rational(from_u64(rng.below(997)), 997));
        }
        const PointSet p = PointSet::from_values(pts);
        std::reverse(pts.begin(), pts.end());
        const Rational d = dispersion(p);
        CHECK(d == dispersion(PointSet::from_values(pts)));
        for (int probe = 0; probe < 20; ++probe) {
            const Rational z = make_rational(from_u64(rng.below(10001)), 10000);
            Rational best = 2;
            for (const auto& x : p) {
                best = std::min(best, Rational(abs(Rational(z - x))));
            }
            CHECK(best <= d);
        }
    }
}

TEST_CASE("min_positive_gap") {
    auto g = min_positive_gap(set_of({"1/101", "2/101", "50/101"}));
    CHECK(g.eta_hi == Rational(2, 101));
    CHECK(g.eta_lo == Rational(1, 101));
    CHECK(g.gap == Rational(1, 101));
    g = min_positive_gap(sigma_alpha({2, 3}, 10, Angle(1, 101)));
    CHECK(g.eta_hi == Rational(2, 101));
    CHECK(g.eta_lo == Rational(1, 101));
    g = min_positive_gap(set_of({"1/3", "2/3"}));
    CHECK(g.gap == Rational(1, 3));
    CHECK_THROWS_AS(min_positive_gap(set_of({"1/3"})), Error);
}

TEST_CASE("property: pigeonhole on the span") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rational> pts;
        const auto n = rng.range(2, 40);
        for (std::uint64_t i = 0; i < n; ++i) {
            pts.push_back(make_rational(from_u64(rng.below(4096)), 4096));
        }
        const PointSet p = PointSet::from_values(pts);
        if (p.size() < 2) {
            continue;
        }
        const auto g = min_positive_gap(p);
        const Rational span = p[p.size() - 1] - p[0];
        CHECK(g.gap * static_cast<unsigned long>(p.size() - 1) <= span);
    }
}

}

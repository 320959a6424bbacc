#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "furst/error.hpp"
#include "furst/rng.hpp"
#include "furst/sunits.hpp"

using namespace furst;
using namespace furst::sunits;

namespace {

std::vector<BigInt> values(const std::vector<SUnit>& xs) {
    std::vector<BigInt> out;
    for (const auto& x : xs) {
        out.push_back(x.value);
    }
    return out;
}

std::vector<BigInt> brute_sigma(std::uint64_t a, std::uint64_t b, std::uint64_t M) {
    std::vector<BigInt> out;
    for (std::uint64_t x = 1; x <= M; x *= a) {
        for (std::uint64_t y = x; y <= M; y *= b) {
            out.push_back(from_u64(y));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("sunits") {

TEST_CASE("enumerate small sets") {
    CHECK(values(enumerate_sigma({2, 3}, 1)) == std::vector<BigInt>{1});
    CHECK(values(enumerate_sigma({2, 3}, 10)) == std::vector<BigInt>{1, 2, 3, 4, 6, 8, 9});
    const auto s = enumerate_sigma({2, 5}, 100);
    CHECK(s.size() == 15);
    CHECK(std::count_if(s.begin(), s.end(), [](const SUnit& x) { return x.v == 0; }) == 7);
    CHECK(std::count_if(s.begin(), s.end(), [](const SUnit& x) { return x.v == 1; }) == 5);
    CHECK(std::count_if(s.begin(), s.end(), [](const SUnit& x) { return x.v == 2; }) == 3);
}

TEST_CASE("exponents reproduce values") {
    for (const auto& x : enumerate_sigma({3, 10}, BigInt("1000000000000"))) {
        CHECK(furst::pow(BigInt(3), x.u) * furst::pow(BigInt(10), x.v) == x.value);
    }
}

TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(enumerate_sigma({2, 4}, 10), Error);
    CHECK_THROWS_AS(enumerate_sigma({1, 3}, 10), Error);
    CHECK_THROWS_AS(enumerate_sigma({2, 3}, 0), Error);
    try {
        enumerate_sigma({6, 9}, 10);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parameter);
    }
}

TEST_CASE("element budget") {
    try {
        enumerate_sigma({2, 3}, BigInt("1000000000000"), 50);
        FAIL("budget not enforced");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::resource);
    }
}

TEST_CASE("property: matches double loop on random pairs") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::uint64_t a, b;
        do {
            a = rng.range(2, 15);
            b = rng.range(2, 15);
        } while (std::gcd(a, b) != 1);
        const std::uint64_t M = rng.range(1, 5'000'000);
        const auto got = values(enumerate_sigma({a, b}, from_u64(M)));
        CHECK(got == brute_sigma(a, b, M));
        CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
    }
}

TEST_CASE("successor and factor") {
    CHECK(successor({2, 3}, 10).value == 12);
    CHECK(successor({2, 3}, 0).value == 1);
    CHECK(successor({2, 3}, 100).value == 108);
    unsigned u = 0, v = 0;
    CHECK(factor({2, 3}, 72, u, v));
    CHECK(u == 3);
    CHECK(v == 2);
    CHECK_FALSE(factor({2, 3}, 10, u, v));
}

TEST_CASE("lattice counts") {
    CHECK(count_lattice({2, 3}, 0.0, Quadrant::nonneg).count == 1);
    CHECK(count_lattice_log({2, 3}, 100, Quadrant::nonneg).count == 20);
    CHECK(count_lattice_log({2, 3}, 100, Quadrant::positive).count == 9);
    CHECK(count_lattice({2, 3}, std::log(100.0), Quadrant::nonneg).count == 20);
    CHECK(count_lattice({2, 3}, std::log(100.0), Quadrant::positive).count == 9);
    // boundary points: 96 = 2^5 3 sits exactly on ln 96
    CHECK(count_lattice_log({2, 3}, 96, Quadrant::nonneg).count == 20);
    CHECK(count_lattice_log({2, 3}, 95, Quadrant::nonneg).count == 19);
}

TEST_CASE("property: nonneg count equals enumeration size") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::uint64_t a, b;
        do {
            a = rng.range(2, 12);
            b = rng.range(2, 12);
        } while (std::gcd(a, b) != 1);
        const BigInt M = from_u64(rng.range(1, 1'000'000'000));
        CHECK(count_lattice_log({a, b}, M, Quadrant::nonneg).count == enumerate_sigma({a, b}, M).size());
    }
}

TEST_CASE("two-term estimate at 10^6") {
    const double t = std::log(1e6);
    const auto c = count_lattice({2, 3}, t, Quadrant::nonneg);
    CHECK(c.count == 142);
    CHECK(c.two_term_estimate == doctest::Approx(109.07).epsilon(1e-3));
    CHECK(count_lattice({2, 3}, t, Quadrant::positive).count == 110);
}

TEST_CASE("asymptotic ratio trend") {
    // positive quadrant rises towards 1 from below; the closed quadrant
    // approaches 1 from above
    double last_pos = 0, last_nonneg = 2;
    for (int k = 6; k <= 12; ++k) {
        const BigInt M = furst::pow(BigInt(10), k);
        const double lnM = std::log(M.get_d());
        const double main = lnM * lnM / (2 * std::log(2.0) * std::log(3.0));
        const double pos = count_lattice_log({2, 3}, M, Quadrant::positive).count.get_d() / main;
        const double nonneg = count_lattice_log({2, 3}, M, Quadrant::nonneg).count.get_d() / main;
        CHECK(pos >= 0.7);
        CHECK(pos <= 1.0);
        CHECK(pos > last_pos);
        CHECK(nonneg >= 1.0);
        CHECK(nonneg <= 1.2);
        CHECK(nonneg < last_nonneg);
        last_pos = pos;
        last_nonneg = nonneg;
    }
}

TEST_CASE("gap reports") {
    auto r = gap_report({2, 3}, 10, 5.116201);
    CHECK(r.max_gap == 3);
    CHECK(r.argmax_pair == std::pair<BigInt, BigInt>(9, 12));
    r = gap_report({2, 3}, 100, 5.116201);
    CHECK(r.max_gap == 15);
    CHECK(r.argmax_pair == std::pair<BigInt, BigInt>(81, 96));
    r = gap_report({2, 3}, 2, 5.116201);
    REQUIRE(r.gaps.size() == 2);
    CHECK(r.gaps[0].q == 1);
    CHECK(r.gaps[0].gap == 1);
    CHECK(r.gaps[1].q == 2);
    CHECK(r.gaps[1].gap == 1);
    for (const auto& g : gap_report({2, 3}, 100000, 5.116201).gaps) {
        CHECK(g.gap >= 1);
    }
    CHECK(std::isfinite(r.normalized_constant));
}

}

#include <doctest.h>

#include <cmath>
#include <set>

#include "furst/digits.hpp"
#include "furst/error.hpp"
#include "furst/rng.hpp"

using namespace furst;
using namespace furst::digits;

TEST_SUITE("digits") {

TEST_CASE("project") {
    CHECK(project(DigitSet::make(2, 4, {3, 7, 11, 15}), 2).ds.residues == std::vector<std::uint64_t>{3});
    CHECK(project(DigitSet::make(2, 2, {0, 1, 3}), 2).ds.residues == std::vector<std::uint64_t>{0, 1, 3});
    CHECK(project(DigitSet::make(2, 4, {5, 13}), 3).ds.residues == std::vector<std::uint64_t>{5});
    CHECK_THROWS_AS(project(DigitSet::make(2, 2, {0}), 3), Error);
    auto ds = DigitSet::make(2, 4, {5, 13});
    ds.source_M1 = 1010;
    CHECK(project(ds, 3).M2 == BigInt(2020));
}

TEST_CASE("ta_shift") {
    CHECK(ta_shift(13, 2, 2) == 3);
    CHECK(ta_shift(13, 2, 1) == 6);
    CHECK(ta_shift(907, 10, 1) == 90);
    CHECK(ta_shift(907, 10, 0) == 907);
}

TEST_CASE("stratify") {
    auto st = stratify(DigitSet::make(2, 4, {3, 7, 11, 15}), 4, 2);
    REQUIRE(st.size() == 1);
    CHECK(st.at(3).X() == 4);
    st = stratify(DigitSet::make(2, 2, {0, 1, 3}), 2, 0);
    CHECK(st.size() == 3);
    st = stratify(DigitSet::make(2, 2, {0, 1, 3}), 2, 2);
    REQUIRE(st.size() == 1);
    CHECK(st.at(0).X() == 3);
    CHECK_THROWS_AS(stratify(DigitSet::make(2, 2, {0}), 1, 2), Error);
}

TEST_CASE("property: strata partition the projection") {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const unsigned n = static_cast<unsigned>(rng.range(1, 12));
        const std::uint64_t a = rng.range(2, 5);
        const std::uint64_t mod = checked_pow_u64(a, n);
        std::vector<std::uint64_t> xs;
        for (int i = 0; i < 40; ++i) {
            xs.push_back(rng.below(mod));
        }
        const auto ds = DigitSet::make(a, n, xs);
        const unsigned s = static_cast<unsigned>(rng.range(0, n));
        const unsigned l = static_cast<unsigned>(rng.range(0, s));
        std::size_t total = 0;
        for (const auto& [lambda, st] : stratify(ds, s, l)) {
            total += st.X();
            const auto y = extract_y(st, 0);
            CHECK(y.Y() == st.X());
            for (std::size_t i = 0; i < y.Y(); ++i) {
                CHECK(y.x_of(y.members[i]) == st.members[i]);
            }
        }
        CHECK(total == project(ds, s).ds.size());
    }
}

TEST_CASE("combinatorial search") {
    auto r = combinatorial_search(DigitSet::make(2, 4, {3, 7, 11, 15}), 2, 0.05);
    CHECK(r.best.s == 4);
    CHECK(r.best.lambda == 3);
    CHECK(r.best.X() == 4);
    CHECK(r.pass);

    r = combinatorial_search(DigitSet::make(2, 6, {9}), 2, 0.05);
    CHECK(r.best.X() == 1);
    CHECK_FALSE(r.pass);

    std::vector<std::uint64_t> all(256);
    for (std::uint64_t i = 0; i < 256; ++i) {
        all[i] = i;
    }
    r = combinatorial_search(DigitSet::make(2, 8, all), 2, 0.05);
    CHECK(r.best.s == 8);
    CHECK(r.best.X() == 4);
    CHECK(r.best.lambda == 0);
    CHECK(r.pass);

    CHECK_THROWS_AS(combinatorial_search(DigitSet::make(2, 2, {0}), 3, 0.05), Error);
    CHECK_THROWS_AS(combinatorial_search(DigitSet::make(2, 2, {0}), 1, 0.3), Error);
    CHECK_THROWS_AS(combinatorial_search(DigitSet::make(2, 2, {0}), 0, 0.05), Error);
}

TEST_CASE("property: dense sets pass by counting") {
    // at s = n some class mod a^(n-l) holds >= |ds| / a^(n-l) members
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const unsigned n = static_cast<unsigned>(rng.range(8, 14));
        const unsigned l = static_cast<unsigned>(rng.range(2, 5));
        const double eps = 0.05;
        const std::uint64_t mod = std::uint64_t{1} << n;
        const double need = std::ldexp(std::pow(2.0, (0.5 - 2 * eps) * l), static_cast<int>(n - l));
        std::set<std::uint64_t> xs;
        while (xs.size() < static_cast<std::size_t>(std::ceil(need))) {
            xs.insert(rng.below(mod));
        }
        const auto r = combinatorial_search(DigitSet::make(2, n, {xs.begin(), xs.end()}), l, eps);
        CHECK(r.pass);
    }
}

TEST_CASE("extract_y") {
    Stratum st{2, 4, 2, 3, {3, 7, 11, 15}};
    auto y = extract_y(st, 0);
    CHECK(y.members == std::vector<std::uint64_t>{0, 1, 2, 3});
    CHECK(y.gamma == circle::Angle(3, 16));
    st = Stratum{2, 3, 1, 1, {5}};
    y = extract_y(st, 0);
    CHECK(y.members == std::vector<std::uint64_t>{1});
    CHECK(y.gamma == circle::Angle(1, 8));
    st = Stratum{2, 3, 1, 1, {6}};
    CHECK_THROWS_AS(extract_y(st, 0), Error);
}

TEST_CASE("property: Lemma 3 witnesses") {
    Rng rng(29);
    for (int trial = 0; trial < 15; ++trial) {
        const BigInt Q = from_u64(rng.range(1000, 100000));
        BigInt A;
        do {
            A = rng.below(Q);
        } while (gcd(A, Q) != 1);
        const circle::Angle x(A, Q);
        const BigInt M1 = Q * 30;
        const unsigned n = static_cast<unsigned>(rng.range(2, 8));
        const auto ds = netgen::digit_set({2, 3}, x, M1, n);
        for (unsigned s = 0; s <= n; ++s) {
            const auto proj = project(ds, s);
            const auto table = witness_table({2, 3}, x, *proj.M2, s);
            for (auto r : proj.ds.residues) {
                CHECK(table.count(r) == 1);
            }
        }
    }
}

}

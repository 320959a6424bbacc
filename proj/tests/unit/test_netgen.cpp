#include <doctest.h>

#include "furst/error.hpp"
#include "furst/netgen.hpp"
#include "furst/rng.hpp"

using namespace furst;
using namespace furst::netgen;
using circle::Angle;

TEST_SUITE("netgen") {

TEST_CASE("net for 1/101") {
    const auto r = build_net({2, 3}, Angle(1, 101), 10);
    CHECK(r.eta_hi.value() - r.eta_lo.value() == Rational(1, 101));
    CHECK(r.d == 101);
    CHECK(r.k == 20);
    CHECK(r.D_d == 15);
    CHECK(r.D_d_pair == std::pair<BigInt, BigInt>(81, 96));
    CHECK(r.delta == Rational(15, 101));
    CHECK(r.M1 == 1010);
    CHECK(r.net.size() == 40);
    CHECK(r.measured_dispersion <= r.delta);
    CHECK(r.pigeonhole_ok);
    CHECK(r.window_ok);
}

TEST_CASE("preconditions") {
    try {
        build_net({2, 3}, Angle(1, 5), 10);
        FAIL("expected a precondition error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition);
    }
    try {
        build_net({2, 3}, Angle(1, 7), 1);
        FAIL("expected a structural error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::structural);
    }
}

TEST_CASE("collision-tolerant path") {
    const auto r = build_net({2, 3}, Angle(1, 5), 10, {true});
    CHECK(r.eta_hi.value() - r.eta_lo.value() == Rational(1, 5));
    CHECK(r.d == 5);
    CHECK(r.point_count < r.sigma_size);
}

TEST_CASE("property: random nets satisfy the construction invariants") {
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const BigInt Q = from_u64(rng.range(1000, 10'000'000));
        BigInt A;
        do {
            A = rng.below(Q);
        } while (gcd(A, Q) != 1);
        const Angle x(A, Q);
        const BigInt M = sqrt(Q);
        const auto r = build_net({2, 3}, x, M);
        const Rational gap = r.eta_hi.value() - r.eta_lo.value();
        CHECK(gap * Q >= 1);
        CHECK(r.measured_dispersion <= r.delta);
        CHECK(r.d <= Rational(Q));
        CHECK(r.q_hi <= M);
        CHECK(r.q_lo <= M);
        // every net point is a difference of two orbit points up to sign
        for (const auto& q : r.q_j) {
            CHECK(q * r.q_hi <= r.M1);
            const Rational diff = circle::frac_mul(q * r.q_hi, x).value() - circle::frac_mul(q * r.q_lo, x).value();
            const Rational point = Rational(q) * gap;
            CHECK(frac(diff) == frac(point));
        }
    }
}

TEST_CASE("choose_n") {
    CHECK(choose_n(Rational(1, 10), 2) == 3);
    CHECK(choose_n(Rational(1), 2) == 0);
    CHECK(choose_n(Rational(15, 101), 2) == 2);
    CHECK(choose_n(Rational(1, 8), 2) == 3);
    CHECK_THROWS_AS(choose_n(Rational(0), 2), Error);
    CHECK_THROWS_AS(choose_n(Rational(-1, 2), 2), Error);
}

TEST_CASE("digit sets") {
    // residues of {1/8, 3/8, 7/8} at n = 2
    CHECK(DigitSet::make(2, 2, {0, 1, 3, 1}).residues == std::vector<std::uint64_t>{0, 1, 3});
    CHECK_THROWS_AS(DigitSet::make(2, 2, {4}), Error);
    const auto ds = digit_set({2, 3}, Angle(1, 101), 1010, 2);
    for (auto x : ds.residues) {
        CHECK(x < 4);
    }
    CHECK(digit_set({2, 3}, Angle(37, 101), 1010, 0).residues == std::vector<std::uint64_t>{0});
}

TEST_CASE("lemma 2 record") {
    const auto r = build_net({2, 3}, Angle(1, 101), 10);
    const auto ds = digit_set({2, 3}, Angle(1, 101), r.M1, choose_n(r.delta, 2));
    const auto rec = verify_lemma2(r, ds);
    CHECK(rec.X_n == ds.size());
    CHECK(rec.sqrtN_half == doctest::Approx(1.0));
    CHECK(rec.pass);
    auto sparse = DigitSet::make(2, 6, {5});
    CHECK_THROWS_AS(verify_lemma2(r, sparse), Error);
    sparse = DigitSet::make(2, 2, {0});
    sparse.source_M1 = r.M1;
    CHECK(verify_lemma2(r, sparse).pass);
}

TEST_CASE("sparse digit set fails the advisory bound") {
    // n = 6 from delta = 1/64
    NetReport fake;
    fake.params = {2, 3};
    fake.delta = Rational(1, 64);
    fake.M1 = 1;
    const auto rec = verify_lemma2(fake, DigitSet::make(2, 6, {5}));
    CHECK(rec.X_n == 1);
    CHECK(rec.sqrtN_half == doctest::Approx(4.0));
    CHECK_FALSE(rec.pass);
}

}

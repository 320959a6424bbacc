#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "furst/error.hpp"
#include "furst/harmonics.hpp"
#include "furst/rng.hpp"

using namespace furst;
using namespace furst::harmonics;
using digits::make_yset;

namespace {

digits::YSet random_yset(Rng& rng, unsigned l, std::size_t size, bool shift) {
    std::vector<std::uint64_t> ys;
    const std::uint64_t mod = std::uint64_t{1} << l;
    while (ys.size() < size) {
        ys.push_back(rng.below(mod));
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    }
    const circle::Angle gamma = shift ? circle::Angle(from_u64(rng.below(1000)), 1000) : circle::Angle();
    return make_yset(2, l, ys, gamma);
}

}  // namespace

TEST_SUITE("harmonics") {

TEST_CASE("orders") {
    CHECK(mult_order(3, 2, 3) == 2);
    CHECK(mult_order(3, 2, 5) == 8);
    CHECK(mult_order(2, 3, 2) == 6);
    CHECK(mult_order(3, 2, 14) == 4096);
    CHECK(mult_order(7, 10, 3) == 20);
    CHECK_THROWS_AS(mult_order(4, 2, 3), Error);
}

TEST_CASE("property: order is exact and divides phi") {
    for (std::uint64_t a : {2, 3, 5, 6, 10, 12}) {
        for (std::uint64_t b : {3, 5, 7, 11, 13}) {
            if (std::gcd(a, b) != 1) {
                continue;
            }
            for (unsigned l = 1; l <= 8; ++l) {
                const auto d = subgroup({a, b}, l);
                CHECK(d.phi % d.S == 0);
                const auto el = d.elements();
                CHECK((el.back() * (b % d.modulus)) % d.modulus == 1 % d.modulus);
                CHECK(std::count(el.begin() + 1, el.end(), 1 % d.modulus) == 0);
            }
        }
    }
}

TEST_CASE("subgroup descriptors") {
    auto d = subgroup({2, 3}, 3);
    CHECK(d.S == 2);
    CHECK(d.elements() == std::vector<std::uint64_t>{1, 3});
    CHECK(d.l1 == 0);
    d = subgroup({2, 3}, 14);
    CHECK(d.S == 4096);
    CHECK(d.kappa == 13);
    CHECK(d.l1 == 1);
    CHECK(d.kappa1 == doctest::Approx(0.25));
}

TEST_CASE("exponential sums") {
    const auto d = subgroup({2, 3}, 3);
    auto v = exp_sum(d, 0);
    CHECK(v.re == doctest::Approx(2));
    CHECK(v.im == doctest::Approx(0));
    v = exp_sum(d, 2);
    CHECK(v.abs() < 1e-12);
    v = exp_sum(d, 1);
    CHECK(v.re == doctest::Approx(0).epsilon(1e-12));
    CHECK(v.im == doctest::Approx(std::sqrt(2.0)));
    CHECK(exp_sum(subgroup({2, 3}, 14), 0).re == doctest::Approx(4096));
}

TEST_CASE("lemma 5 scan") {
    CHECK(lemma5_scan(subgroup({2, 3}, 3)).vacuous);
    const auto desc = subgroup({2, 3}, 10);
    const auto scan = lemma5_scan(desc);
    CHECK(scan.vacuous);  // l1 = 0 below l = 14
    CHECK(scan.empirical_threshold == desc.l - 3);
}

TEST_CASE("lemma 5 mutation is detected") {
    const auto desc = subgroup({2, 3}, 14);
    Lemma5Options opt;
    opt.flip_term = 0;
    const auto scan = lemma5_scan(desc, opt);
    CHECK_FALSE(scan.vacuous);
    CHECK_FALSE(scan.violations.empty());
}

TEST_CASE("sigma sums") {
    const auto single = make_yset(2, 4, {0}, circle::Angle());
    CHECK(std::abs(sigma_sum(single, 5) - std::complex<double>(1, 0)) < 1e-12);
    std::vector<std::uint64_t> all(16);
    for (std::uint64_t i = 0; i < 16; ++i) {
        all[i] = i;
    }
    CHECK(std::abs(sigma_sum(make_yset(2, 4, all, circle::Angle()), 1)) < 1e-12);
    const circle::Angle gamma(1, 3);
    const auto full = make_yset(2, 4, all, gamma);
    const auto expect = 16.0 * std::polar(1.0, 2 * std::numbers::pi * 16.0 / 3);
    CHECK(std::abs(sigma_sum(full, 16) - expect) < 1e-9);
}

TEST_CASE("lemma 6 routes agree and hold") {
    Rng rng(31);
    const auto desc = subgroup({2, 3}, 10);
    for (int trial = 0; trial < 5; ++trial) {
        const auto y = random_yset(rng, 10, rng.range(4, 60), true);
        const YSpectrum spec(y);
        for (int m : {1, 2, 7, 64, 1024}) {
            const auto a = lemma6_check(spec, y, desc, m);
            const auto b = lemma6_check(y, desc, m, Lemma6Route::direct);
            CHECK(a.lhs == doctest::Approx(b.lhs).epsilon(1e-9));
            CHECK(a.holds);
            CHECK(b.holds);
        }
    }
    const auto single = make_yset(2, 10, {0}, circle::Angle());
    const auto r = lemma6_check(single, desc, 1);
    CHECK(r.lhs == doctest::Approx(static_cast<double>(desc.S)));
    CHECK_THROWS_AS(lemma6_check(make_yset(2, 9, {0}, circle::Angle()), desc, 1), Error);
}

TEST_CASE("bump function") {
    const BumpSpec f{4};
    CHECK(bump_eval(f, 0) == 1);
    CHECK(bump_eval(f, 0.125) == doctest::Approx(0.5));
    CHECK(bump_eval(f, 0.875) == doctest::Approx(0.5));
    CHECK(bump_eval(f, 0.3) == 0);
    CHECK(bump_fourier(f, 0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(bump_eval(BumpSpec{1}, 0), Error);
}

TEST_CASE("property: Fourier coefficients and Parseval") {
    for (double H : {2.0, 4.0, 8.0, 16.0, 64.0}) {
        const BumpSpec f{H};
        double partial = 0;
        for (int m = 1; m <= 10000; ++m) {
            const double fm = bump_fourier(f, m);
            CHECK(std::fabs(fm) <= std::min(1 / H, H / (std::numbers::pi * std::numbers::pi * m * m)) * (1 + 1e-12));
            partial += 2 * std::pow(2 * std::numbers::pi * m * fm, 2);
        }
        CHECK(partial <= bump_derivative_norm2(f));
        CHECK(partial >= 0.99 * bump_derivative_norm2(f));
    }
    // numeric quadrature of f_m
    const BumpSpec f{5};
    for (int m : {1, 2, 3, 7}) {
        double acc = 0;
        const int steps = 200000;
        for (int i = 0; i < steps; ++i) {
            const double t = (i + 0.5) / steps;
            acc += bump_eval(f, t) * std::cos(2 * std::numbers::pi * m * t);
        }
        CHECK(acc / steps == doctest::Approx(bump_fourier(f, m)).epsilon(1e-6));
    }
}

TEST_CASE("remainders") {
    const auto desc = subgroup({2, 3}, 6);
    const auto single = make_yset(2, 6, {0}, circle::Angle());
    const BumpSpec f{4};
    const Rational z(1, 10);
    CHECK(remainder(single, desc, 3, f, z) == doctest::Approx(bump_eval(f, -0.1) - 0.25));
    std::vector<std::uint64_t> all(64);
    for (std::uint64_t i = 0; i < 64; ++i) {
        all[i] = i;
    }
    CHECK(std::fabs(remainder(make_yset(2, 6, all, circle::Angle()), desc, 0, f, 0)) <= 4.0 / 64);
    const auto rec = lemma7_check(single, desc, f, z);
    CHECK(rec.mean_square == doctest::Approx(std::pow(bump_eval(f, -0.1) - 0.25, 2)));
    CHECK(rec.holds);
}

TEST_CASE("property: lemma 7 best w under the root mean square") {
    Rng rng(37);
    const auto desc = subgroup({2, 3}, 12);
    for (int trial = 0; trial < 6; ++trial) {
        const auto y = random_yset(rng, 12, rng.range(16, 256), true);
        const auto rec = lemma7_check(y, desc, BumpSpec{4}, Rational(1, 3));
        CHECK(rec.holds);
        CHECK(rec.profile.size() == desc.S);
        CHECK(rec.ratio > 0);
    }
}

TEST_CASE("lemma 8 search") {
    std::vector<std::uint64_t> all(8);
    for (std::uint64_t i = 0; i < 8; ++i) {
        all[i] = i;
    }
    const auto desc = subgroup({2, 3}, 3);
    auto r = lemma8_search(make_yset(2, 3, all, circle::Angle()), desc, Rational(3, 10), 4);
    CHECK(r.success);
    CHECK(r.w == 0);
    CHECK(r.x == 2);
    CHECK(r.err == Rational(1, 20));

    const auto single = make_yset(2, 3, {0}, circle::Angle());
    r = lemma8_search(single, desc, Rational(1, 2), 2);
    CHECK(r.err == Rational(1, 2));
    CHECK(r.success);
    CHECK_FALSE(lemma8_search(single, desc, Rational(1, 2), 2.5).success);
    CHECK_THROWS_AS(lemma8_search(make_yset(2, 3, {}, circle::Angle()), desc, Rational(1, 2), 2), Error);
}

TEST_CASE("property: lemma 8 matches an exact rescan") {
    Rng rng(41);
    const auto desc = subgroup({2, 3}, 5);
    for (int trial = 0; trial < 20; ++trial) {
        digits::Stratum st{2, 9, 5, rng.below(16), {}};
        for (int i = 0; i < 6; ++i) {
            st.members.push_back(st.lambda + 16 * rng.below(32));
        }
        std::sort(st.members.begin(), st.members.end());
        st.members.erase(std::unique(st.members.begin(), st.members.end()), st.members.end());
        const auto y = digits::extract_y(st, 0);
        const Rational z = make_rational(from_u64(rng.below(1000)), 1000);
        const auto r = lemma8_search(y, desc, z, 3);
        Rational best = 1;
        for (std::uint64_t w = 0; w < desc.S; ++w) {
            for (auto x : st.members) {
                const BigInt bx = furst::pow(BigInt(3), static_cast<unsigned long>(w)) * from_u64(x);
                best = std::min(best, nearest_int_norm(make_rational(bx, 512) - z));
            }
        }
        CHECK(r.err == best);
        CHECK(r.success == (r.err * 3 <= 1));
    }
}

}

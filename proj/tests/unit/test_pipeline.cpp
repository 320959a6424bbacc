#include <doctest.h>

#include "furst/error.hpp"
#include "furst/pipeline.hpp"
#include "furst/rng.hpp"

using namespace furst;
using namespace furst::pipeline;
using alpha::RealSpec;

namespace {

PipelineConfig small_config() {
    PipelineConfig cfg;
    cfg.params = {2, 3};
    cfg.A = 1;
    cfg.Q = 101;
    cfg.delta = 1;
    cfg.eps = 0.05;
    cfg.targets = {Rational(0), Rational(1, 3), Rational(1, 2), Rational(9, 10)};
    return cfg;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("full construction trace for 1/101") {
    const auto r = run_theorem1(small_config());
    CHECK(r.M == 10);
    CHECK(r.M1 == 1010);
    CHECK(r.net.delta == Rational(15, 101));
    CHECK(r.n == 2);
    CHECK(r.N == 4);
    CHECK(r.l == 1);
    CHECK(r.l_clamped);
    CHECK(r.yset.Y() >= 1);
    REQUIRE(r.targets.size() == 4);
    for (const auto& t : r.targets) {
        CHECK(t.error <= t.exact_bound);
        // error recomputed from the exponent pair
        const BigInt q = furst::pow(BigInt(2), t.u) * furst::pow(BigInt(3), t.v);
        CHECK(q == t.q_star);
        CHECK(nearest_int_norm(Rational(q, 101) - t.z) == t.error);
        CHECK(t.q_star <= r.witnesses.at(t.lemma8.x) * furst::pow(BigInt(3), t.lemma8.w));
    }
}

TEST_CASE("M must stay below Q") {
    auto cfg = small_config();
    cfg.delta = 2.5;
    try {
        run_theorem1(cfg);
        FAIL("expected a precondition error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::precondition);
    }
    cfg = small_config();
    cfg.Q = 2;
    CHECK_THROWS_AS(run_theorem1(cfg), Error);
    cfg = small_config();
    cfg.A = 0;
    CHECK_THROWS_AS(run_theorem1(cfg), Error);
}

TEST_CASE("large Q run") {
    PipelineConfig cfg;
    cfg.params = {2, 3};
    cfg.A = 12345;
    cfg.Q = 1'000'000'007;
    cfg.delta = 0.5;
    cfg.eps = 0.05;
    for (int i = 0; i <= 10; ++i) {
        cfg.targets.push_back(Rational(i, 10));
    }
    const auto r = run_theorem1(cfg);
    CHECK(r.M == 177);
    CHECK(r.n >= 1);
    for (const auto& t : r.targets) {
        CHECK(t.error <= t.exact_bound);
        if (t.lemma8.success && r.budget.b_power_ok) {
            CHECK(t.reference_bound_holds);
        }
        if (r.budget.pass) {
            CHECK(t.within_budget);
        }
    }
}

TEST_CASE("overrides") {
    auto cfg = small_config();
    cfg.overrides.H = 3;
    cfg.overrides.s = 2;
    const auto r = run_theorem1(cfg);
    CHECK(r.H == 3);
    CHECK(r.search.best.s == 2);
}

TEST_CASE("determinism") {
    const auto a = run_theorem1(small_config());
    const auto b = run_theorem1(small_config());
    for (std::size_t i = 0; i < a.targets.size(); ++i) {
        CHECK(a.targets[i].q_star == b.targets[i].q_star);
    }
}

TEST_CASE("brute force oracle") {
    auto r = brute_force_best({2, 3}, RealSpec::rational(Rational(5, 7)), RealSpec::rational(0), 10);
    CHECK(r.q.value == 3);
    CHECK(r.error.lo == Rational(1, 7));
    r = brute_force_best({2, 3}, RealSpec::rational(Rational(2, 9)), RealSpec::rational(Rational(2, 9)), 100);
    CHECK(r.q.value == 1);
    CHECK(r.error.hi == 0);
    const auto s2 = RealSpec::cf({0, 2}, 1);
    r = brute_force_best({2, 3}, s2, RealSpec::rational(Rational(1, 2)), 1'000'000);
    CHECK(r.error.hi < Rational(1, 100));
    CHECK(r.error.width() < Rational(1, 1000000000));
    CHECK_THROWS_AS(brute_force_best({2, 3}, s2, RealSpec::rational(0), 0), Error);
}

TEST_CASE("property: brute force matches a direct scan") {
    Rng rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const Rational x = make_rational(from_u64(rng.below(1000)), from_u64(rng.range(1, 1000)));
        const Rational beta = make_rational(from_u64(rng.below(1000)), from_u64(rng.range(1, 1000)));
        const BigInt N = from_u64(rng.range(1, 100000));
        const auto r = brute_force_best({2, 3}, RealSpec::rational(x), RealSpec::rational(beta), N);
        Rational best = 2;
        BigInt arg = 0;
        for (const auto& e : sunits::enumerate_sigma({2, 3}, N)) {
            const Rational v = nearest_int_norm(Rational(e.value) * x - beta);
            if (v < best) {
                best = v;
                arg = e.value;
            }
        }
        CHECK(r.q.value == arg);
        CHECK(r.error.lo == best);
    }
}

TEST_CASE("solver dominance and fallback") {
    const auto s2 = RealSpec::cf({0, 2}, 1);
    Rng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const auto beta = RealSpec::rational(make_rational(from_u64(rng.below(1000)), 1000));
        const auto p = solve_inhomogeneous({2, 3}, s2, beta, 100'000'000, SolveMode::pipeline);
        REQUIRE(p.brute_error);
        CHECK_FALSE(p.error.hi < p.brute_error->lo);
        CHECK(p.q.value <= 100'000'000);
        const auto again = approximation_error(p.q.value, s2, beta, 512);
        CHECK_FALSE(again.hi < p.error.lo);
        CHECK_FALSE(p.error.hi < again.lo);
    }
    const auto tiny = solve_inhomogeneous({2, 3}, RealSpec::rational(Rational(1, 2)), RealSpec::rational(0), 100,
                                          SolveMode::pipeline);
    CHECK(tiny.fallback);
    CHECK_FALSE(tiny.fallback_reason.empty());
}

TEST_CASE("uniform solver") {
    const auto golden = RealSpec::cf({0, 1}, 1);
    auto u = solve_uniform({2, 3}, golden, {0.2, 1}, 10000, 1, 0.05);
    CHECK_FALSE(u.violated);
    REQUIRE(u.anchor);
    CHECK(u.anchor->Q == 6765);
    CHECK(u.Psi_le_Q);
    u = solve_uniform({2, 3}, RealSpec::cf({0, 1, 1000000, 1}, 3), {1.0 / 3, 1}, 10, 1, 0.05);
    CHECK(u.violated);
    CHECK(u.violating_q == 1);
    u = solve_uniform({2, 3}, golden, {0.2, 1}, 1000000, 1, 0.05);
    CHECK(u.vacuous);
}

TEST_CASE("density") {
    auto d = measure_density({2, 3}, circle::Angle(1, 101), 2);
    CHECK(d.bound == 10201);
    CHECK(d.count == 67);
    CHECK_FALSE(d.reference_bound);
    CHECK(d.vacuous);
    d = measure_density({2, 3}, circle::Angle(1, 3), 2);
    CHECK_FALSE(d.reference_bound);
    const BigInt Q("1000000000000");
    d = measure_density({2, 3}, circle::Angle(BigInt("123456789011"), Q), 2);
    REQUIRE(d.reference_bound);
    CHECK(*d.reference_bound >= 0.5);
    CHECK(d.vacuous);
    CHECK(to_double(d.dispersion) <= *d.reference_bound);
    CHECK(triple_log_bound(std::log(1e18), 0.05).has_value());
    CHECK_FALSE(triple_log_bound(std::log(1e6), 0.05).has_value());
}

}

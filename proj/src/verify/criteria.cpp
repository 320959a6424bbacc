#include "furst/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include "furst/alpha.hpp"
#include "furst/circle.hpp"
#include "furst/digits.hpp"
#include "furst/error.hpp"
#include "furst/harmonics.hpp"
#include "furst/netgen.hpp"
#include "furst/parallel.hpp"
#include "furst/pipeline.hpp"
#include "furst/regression.hpp"
#include "furst/rng.hpp"
#include "furst/sunits.hpp"
#include "oracles.hpp"

namespace furst::verify {

namespace {

using io::Json;
using io::num;
using io::str;
using u64 = std::uint64_t;

constexpr sunits::SUnitParams k23{2, 3};
constexpr double kBeta = pipeline::kBakerBeta;

bool full(const Options& o) { return o.level == Level::full; }

bool same(double x, double frozen, double rel) {
    return std::fabs(x - frozen) <= rel * std::fabs(frozen);
}

BigInt random_coprime(Rng& rng, const BigInt& Q) {
    for (;;) {
        BigInt A = rng.below(Q - 1) + 1;
        if (gcd(A, Q) == 1) {
            return A;
        }
    }
}

Rational random_fraction(Rng& rng, u64 max_den) {
    const u64 den = rng.range(2, max_den);
    return make_rational(from_u64(rng.below(den)), from_u64(den));
}

// C1
Record enumeration(const Options& o) {
    Record r;
    Rng rng(o.seed ^ 0x01);
    const int pairs = 50;
    int mismatches = 0;
    u64 elements = 0;
    for (int i = 0; i < pairs; ++i) {
        u64 a = 0;
        u64 b = 0;
        do {
            a = rng.range(2, 12);
            b = rng.range(2, 12);
        } while (std::gcd(a, b) != 1);
        const u64 M = i == 0 ? 1'000'000 : rng.range(1, 1'000'000);
        const auto got = sunits::enumerate_sigma({a, b}, from_u64(M));
        const auto want = oracle::sigma_u64(a, b, M);
        elements += want.size();
        bool ok = got.size() == want.size();
        for (std::size_t k = 0; ok && k < got.size(); ++k) {
            ok = got[k].u == want[k].u && got[k].v == want[k].v && got[k].value == from_u64(want[k].value);
        }
        if (!ok) {
            ++mismatches;
            r.data["first_mismatch"] = Json{{"a", num(a)}, {"b", num(b)}, {"M", num(M)}};
        }
    }
    r.data["pairs"] = num(u64(pairs));
    r.data["elements"] = num(elements);
    r.data["mismatches"] = num(u64(mismatches));
    r.pass = mismatches == 0;
    r.detail = std::to_string(pairs) + " pairs, " + std::to_string(elements) + " elements, " +
               std::to_string(mismatches) + " mismatches";
    return r;
}

// C2
Record lattice_count(const Options&) {
    Record r;
    const BigInt M = 1'000'000;
    const auto c = sunits::count_lattice_log(k23, M, sunits::Quadrant::nonneg);
    const auto brute = oracle::sigma_u64(2, 3, 1'000'000);
    const double count = c.count.get_d();
    const double rel = std::fabs(count - c.two_term_estimate) / count;
    const double t = std::log(1e6);
    const double ratio = (count - c.two_term_estimate) / std::pow(t, 1 - 1 / (kBeta - 1));
    const bool oracle_ok = c.count == from_u64(brute.size());
    const bool frozen_ok = same(ratio, regression::kRemainderRatio, 1e-12);
    r.data["count"] = str(c.count);
    r.data["estimate"] = num(c.two_term_estimate);
    r.data["relative_error"] = num(rel);
    r.data["frozen"] = Json{{"remainder_ratio", num(ratio)}};
    r.pass = oracle_ok && frozen_ok && rel <= 0.10;
    r.detail = "count " + to_string(c.count) + " vs estimate " + num(c.two_term_estimate) + ", relative error " +
               num(rel) + " (limit 0.1), remainder ratio " + num(ratio) + (frozen_ok ? "" : " differs from frozen") +
               (oracle_ok ? "" : ", count disagrees with brute force");
    return r;
}

// C3
Record gaps(const Options&) {
    Record r;
    const auto small = sunits::gap_report(k23, 100, kBeta);
    // independent: consecutive differences of the double-loop enumeration
    const auto units = oracle::sigma_u64(2, 3, 100);
    u64 max_gap = 0;
    std::pair<u64, u64> at;
    for (std::size_t i = 1; i < units.size(); ++i) {
        if (units[i].value - units[i - 1].value > max_gap) {
            max_gap = units[i].value - units[i - 1].value;
            at = {units[i - 1].value, units[i].value};
        }
    }
    const bool small_ok = small.max_gap == 15 && small.argmax_pair.first == 81 && small.argmax_pair.second == 96 &&
                          max_gap == 15 && at == std::pair<u64, u64>{81, 96};
    const auto big = sunits::gap_report(k23, BigInt("10000000000"), kBeta);
    const bool frozen_ok = big.normalized_constant == regression::kGapConstant;
    r.data["max_gap_below_100"] = str(small.max_gap);
    r.data["argmax_pair"] = Json::array({str(small.argmax_pair.first), str(small.argmax_pair.second)});
    r.data["max_gap_1e10"] = str(big.max_gap);
    r.data["frozen"] = Json{{"gap_constant", num(big.normalized_constant)}};
    r.pass = small_ok && frozen_ok;
    r.detail = "max gap below 100: " + to_string(small.max_gap) + " at (" + to_string(small.argmax_pair.first) + ", " +
               to_string(small.argmax_pair.second) + "); constant to 1e10: " + num(big.normalized_constant) +
               (frozen_ok ? "" : " differs from frozen");
    return r;
}

// C4
Record nets(const Options& o) {
    Record r;
    Rng rng(o.seed ^ 0x04);
    const int count = full(o) ? 200 : 50;
    int errors = 0, mismatches = 0, pigeonhole = 0, dispersion = 0;
    Json failures = Json::array();
    for (int i = 0; i < count; ++i) {
        const u64 decade = rng.range(3, 8);
        const u64 lo = checked_pow_u64(10, static_cast<unsigned>(decade));
        const BigInt Q = from_u64(rng.range(lo, 10 * lo));
        const BigInt A = random_coprime(rng, Q);
        const BigInt M = sqrt(Q);
        auto note = [&](const std::string& what) {
            if (failures.size() < 10) {
                failures.push_back(Json{{"A", str(A)}, {"Q", str(Q)}, {"failure", what}});
            }
        };
        netgen::NetReport rep;
        try {
            rep = netgen::build_net(k23, circle::Angle(A, Q), M);
        } catch (const Error& e) {
            ++errors;
            note(e.what());
            continue;
        }
        const auto res = oracle::residues(2, 3, to_u64(M), A, Q);
        BigInt g = Q;
        for (std::size_t k = 1; k < res.size(); ++k) {
            g = std::min<BigInt>(g, res[k] - res[k - 1]);
        }
        const Rational gap = make_rational(g, Q);
        if (rep.point_count != res.size() || rep.eta_hi.value() - rep.eta_lo.value() != gap) {
            ++mismatches;
            note("closest pair disagrees with brute force");
        }
        if (!(Rational(1, 1) / Rational(Q) <= gap && gap * Rational(from_u64(res.size())) <= 1)) {
            ++pigeonhole;
            note("gap " + to_string(gap) + " outside [1/Q, 1/" + std::to_string(res.size()) + "]");
        }
        std::vector<Rational> pts = rep.net.values();
        std::sort(pts.begin(), pts.end());
        const Rational disp = oracle::interval_dispersion(pts);
        if (disp != rep.measured_dispersion || disp > rep.delta) {
            ++dispersion;
            note("net dispersion " + to_string(disp) + " vs delta " + to_string(rep.delta));
        }
    }
    r.data["nets"] = num(u64(count));
    r.data["errors"] = num(u64(errors));
    r.data["mismatches"] = num(u64(mismatches));
    r.data["gap_bound_failures"] = num(u64(pigeonhole));
    r.data["dispersion_failures"] = num(u64(dispersion));
    r.data["failures"] = failures;
    r.pass = errors + mismatches + pigeonhole + dispersion == 0;
    r.detail = std::to_string(count) + " nets: " + std::to_string(errors) + " errors, " + std::to_string(mismatches) +
               " oracle mismatches, " + std::to_string(pigeonhole) + " gap-bound failures, " +
               std::to_string(dispersion) + " dispersion failures";
    return r;
}

harmonics::Lemma5Scan scan5(unsigned l, std::optional<u64> flip) {
    const auto desc = harmonics::subgroup(k23, l);
    harmonics::Lemma5Options opt;
    opt.flip_term = flip;
    return harmonics::lemma5_scan(desc, opt);
}

// C5
Record lemma5(const Options& o) {
    Record r;
    const unsigned l = 14;
    const auto start = std::chrono::steady_clock::now();
    const auto scan = scan5(l, o.inject_sign_flip ? std::optional<u64>(1) : std::nullopt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double limit = thread_count() > 1 ? 60 : 300;
    r.data["l"] = num(u64(l));
    r.data["l1"] = num(u64(scan.l1));
    r.data["scanned"] = num(scan.scanned);
    r.data["violations"] = num(u64(scan.violations.size()));
    r.data["empirical_threshold"] = num(u64(scan.empirical_threshold));
    r.data["empirical_witness"] = num(scan.empirical_witness);
    r.data["threads"] = num(u64(thread_count()));
    const bool frozen_ok = scan.empirical_threshold == regression::kLemma5Threshold;
    r.pass = !scan.vacuous && scan.violations.empty() && secs < limit && frozen_ok;
    r.detail = "l = 14, l1 = " + std::to_string(scan.l1) + ", " + std::to_string(scan.scanned) + " m scanned, " +
               std::to_string(scan.violations.size()) + " violations, empirical threshold " +
               std::to_string(scan.empirical_threshold) + " (m = " + std::to_string(scan.empirical_witness) + ")" +
               (frozen_ok ? "" : ", threshold differs from frozen") + (secs < limit ? "" : ", over the time limit");
    return r;
}

struct Trial {
    digits::YSet y;
    Rational z;
};

std::vector<Trial> trials(const Options& o) {
    Rng rng(o.seed ^ 0x06);
    const int count = full(o) ? 100 : 20;
    const unsigned l = 14;
    std::vector<Trial> out;
    for (int t = 0; t < count; ++t) {
        const u64 size = rng.range(16, 1024);
        std::set<u64> members;
        while (members.size() < size) {
            members.insert(rng.below(u64{1} << l));
        }
        const circle::Angle gamma(random_fraction(rng, u64{1} << 20));
        const Rational z = random_fraction(rng, 1'000'000);
        out.push_back({digits::make_yset(2, l, {members.begin(), members.end()}, gamma), z});
    }
    return out;
}

// C6
Record lemma6(const Options& o) {
    Record r;
    const auto desc = harmonics::subgroup(k23, 14);
    const auto ts = trials(o);
    std::vector<int> fails(ts.size(), 0);
    std::vector<int> route(ts.size(), 0);
    std::vector<double> worst(ts.size(), 0);
    parallel_for(ts.size(), [&](std::size_t i) {
        const harmonics::YSpectrum spectrum(ts[i].y);
        for (u64 m = 1; m <= 64; ++m) {
            const auto rec = harmonics::lemma6_check(spectrum, ts[i].y, desc, m);
            fails[i] += rec.holds ? 0 : 1;
            worst[i] = std::max(worst[i], rec.ratio);
            if (i < 3 && (m == 1 || m == 6)) {
                const auto direct = harmonics::lemma6_check(ts[i].y, desc, m, harmonics::Lemma6Route::direct);
                if (std::fabs(direct.lhs - rec.lhs) > 1e-9 * std::max(1.0, rec.lhs)) {
                    ++route[i];
                }
            }
        }
    });
    const int failures = std::accumulate(fails.begin(), fails.end(), 0);
    const int disagreements = std::accumulate(route.begin(), route.end(), 0);
    const double max_ratio = *std::max_element(worst.begin(), worst.end());
    r.data["trials"] = num(u64(ts.size()));
    r.data["checks"] = num(u64(ts.size() * 64));
    r.data["failures"] = num(u64(failures));
    r.data["route_disagreements"] = num(u64(disagreements));
    r.data["max_ratio"] = num(max_ratio);
    r.pass = failures == 0 && disagreements == 0;
    r.detail = std::to_string(ts.size() * 64) + " checks, " + std::to_string(failures) + " failures, max lhs/rhs " +
               num(max_ratio);
    return r;
}

// C7
Record lemma7(const Options& o) {
    Record r;
    const auto desc = harmonics::subgroup(k23, 14);
    const auto ts = trials(o);
    const double Hs[3] = {4, 8, 16};
    std::vector<double> ratio(ts.size() * 3, 0);
    std::vector<char> holds(ts.size() * 3, 0);
    parallel_for(ts.size() * 3, [&](std::size_t i) {
        const auto rec = harmonics::lemma7_check(ts[i / 3].y, desc, harmonics::BumpSpec{Hs[i % 3]}, ts[i / 3].z);
        ratio[i] = rec.ratio;
        holds[i] = rec.holds;
    });
    const int failures = static_cast<int>(std::count(holds.begin(), holds.end(), 0));
    Json env = Json::array();
    bool frozen_ok = true;
    for (int h = 0; h < 3; ++h) {
        double m = 0;
        for (std::size_t t = 0; t < ts.size(); ++t) {
            m = std::max(m, ratio[3 * t + h]);
        }
        env.push_back(num(m));
        const double frozen = regression::kLemma7Envelope[h];
        frozen_ok = frozen_ok && (full(o) ? same(m, frozen, 1e-9) : m <= frozen * (1 + 1e-9));
    }
    r.data["trials"] = num(u64(ts.size()));
    r.data["failures"] = num(u64(failures));
    r.data["frozen"] = Json{{"lemma7_envelope", env}};
    r.pass = failures == 0 && frozen_ok;
    r.detail = std::to_string(ts.size() * 3) + " trials, " + std::to_string(failures) +
               " without a good w, envelope " + env.dump() + (frozen_ok ? "" : " outside frozen envelope");
    return r;
}

void shuffle(std::vector<u64>& xs, Rng& rng) {
    for (std::size_t i = xs.size(); i > 1; --i) {
        std::swap(xs[i - 1], xs[rng.below(u64{i})]);
    }
}

struct Rescan {
    bool minimizer = false;
    bool bound = false;
};

Rescan rescan(const pipeline::PipelineReport& rep, const pipeline::TargetResult& t, Rng& rng) {
    const auto& y = rep.yset;
    const auto& desc = rep.subgroup;
    const BigInt P = pow(y.a, y.s);
    const BigInt step = pow(y.a, y.s - y.l);
    const Rational z = frac(t.z);
    std::vector<u64> ws(desc.S);
    std::iota(ws.begin(), ws.end(), 0);
    std::vector<u64> ys = y.members;
    shuffle(ws, rng);
    shuffle(ys, rng);
    BigInt best = -1;
    const BigInt b = from_u64(desc.b);
    BigInt bw, x, rr;
    for (u64 w : ws) {
        mpz_powm_ui(bw.get_mpz_t(), b.get_mpz_t(), w, P.get_mpz_t());
        for (u64 v : ys) {
            x = from_u64(y.lambda) + from_u64(v) * step;
            rr = bw * x;
            mpz_fdiv_r(rr.get_mpz_t(), rr.get_mpz_t(), P.get_mpz_t());
            BigInt k = oracle::scaled_distance(rr, P, z);
            if (best < 0 || k < best) {
                best = k;
            }
        }
    }
    const Rational best_err = make_rational(best, P * z.get_den());
    const auto& l8 = t.lemma8;
    BigInt chosen;
    mpz_powm_ui(chosen.get_mpz_t(), b.get_mpz_t(), l8.w, P.get_mpz_t());
    chosen *= from_u64(l8.x);
    mpz_fdiv_r(chosen.get_mpz_t(), chosen.get_mpz_t(), P.get_mpz_t());
    const bool x_ok = from_u64(l8.x) == from_u64(y.lambda) + from_u64(l8.y) * step &&
                      std::binary_search(y.members.begin(), y.members.end(), l8.y) && l8.w < desc.S;
    Rescan out;
    out.minimizer = x_ok && l8.err == best_err && oracle::scaled_distance(chosen, P, z) == best;
    out.bound = !l8.success || l8.err * Rational(rep.H) <= 1;
    return out;
}

// C8
Record lemma8(const Options& o) {
    Record r;
    Rng rng(o.seed ^ 0x08);
    std::vector<BigInt> Qs = {BigInt(10007), BigInt(100003), BigInt(1000003), BigInt(1000000007)};
    if (!full(o)) {
        Qs.resize(2);
    }
    int instances = 0, targets = 0, not_min = 0, bound = 0;
    u64 largest_scan = 0;
    Json skipped = Json::array();
    // default parameters give l = 1 at these sizes; the overrides force larger subgroups
    struct Instance {
        BigInt Q;
        double delta;
        pipeline::Overrides ov;
    };
    std::vector<Instance> runs;
    for (const auto& Q : Qs) {
        runs.push_back({Q, 1.0, {}});
        runs.push_back({Q, 0.5, {}});
    }
    const std::pair<unsigned, unsigned> forced[] = {{16, 4}, {20, 6}, {24, 8}, {28, 10}, {32, 12}};
    for (const auto& [n, l] : forced) {
        if (full(o) || l <= 8) {
            pipeline::Overrides ov;
            ov.n = n;
            ov.l = l;
            runs.push_back({BigInt("1000000000000000003"), 1.0, ov});
        }
    }
    for (const auto& run : runs) {
        pipeline::PipelineConfig cfg;
        cfg.params = k23;
        cfg.Q = run.Q;
        cfg.A = random_coprime(rng, run.Q);
        cfg.delta = run.delta;
        cfg.overrides = run.ov;
        for (int k = 0; k < 3; ++k) {
            cfg.targets.push_back(random_fraction(rng, 1000));
        }
        pipeline::PipelineReport rep;
        try {
            rep = pipeline::run_theorem1(cfg);
        } catch (const Error& e) {
            skipped.push_back(Json{{"Q", str(run.Q)}, {"delta", num(run.delta)}, {"error", e.what()}});
            continue;
        }
        ++instances;
        largest_scan = std::max<u64>(largest_scan, rep.subgroup.S * rep.yset.Y());
        for (const auto& t : rep.targets) {
            ++targets;
            const auto res = rescan(rep, t, rng);
            not_min += res.minimizer ? 0 : 1;
            bound += res.bound ? 0 : 1;
        }
    }
    r.data["instances"] = num(u64(instances));
    r.data["targets"] = num(u64(targets));
    r.data["not_minimizer"] = num(u64(not_min));
    r.data["bound_failures"] = num(u64(bound));
    r.data["largest_scan"] = num(largest_scan);
    r.data["skipped"] = skipped;
    r.pass = instances > 0 && not_min == 0 && bound == 0;
    r.detail = std::to_string(instances) + " pipeline instances, " + std::to_string(targets) + " targets, " +
               std::to_string(not_min) + " non-minimizers, " + std::to_string(bound) + " bound failures, " +
               std::to_string(skipped.size()) + " configs rejected by the pipeline, largest scan " +
               std::to_string(largest_scan) + " pairs";
    return r;
}

// C9
Record dominance(const Options& o) {
    Record r;
    Rng rng(o.seed ^ 0x09);
    const int per_alpha = full(o) ? 100 : 5;
    const BigInt N = 100'000'000;
    const std::pair<const char*, alpha::RealSpec> alphas[] = {
        {"sqrt2-1", alpha::RealSpec::cf({0, 2}, 1)},
        {"golden-1", alpha::RealSpec::cf({0, 1}, 1)},
    };
    int cases = 0, violations = 0, undecided = 0, fallbacks = 0;
    double error_sum = 0;
    u64 hash = 1469598103934665603ull;
    for (const auto& [name, x] : alphas) {
        for (int i = 0; i < per_alpha; ++i) {
            const auto beta = alpha::RealSpec::rational(random_fraction(rng, 1'000'000));
            const auto brute = pipeline::brute_force_best(k23, x, beta, N);
            const auto pipe = pipeline::solve_inhomogeneous(k23, x, beta, N, pipeline::SolveMode::pipeline);
            ++cases;
            fallbacks += pipe.fallback ? 1 : 0;
            if (brute.q.value != pipe.q.value) {
                auto b = brute.error;
                auto p = pipe.error;
                if (!(b.hi <= p.lo)) {
                    b = pipeline::approximation_error(brute.q.value, x, beta, 4096);
                    p = pipeline::approximation_error(pipe.q.value, x, beta, 4096);
                }
                if (b.lo > p.hi) {
                    ++violations;
                } else if (!(b.hi <= p.lo)) {
                    ++undecided;
                }
            }
            error_sum += to_double(brute.error.mid());
            for (char c : to_string(brute.q.value)) {
                hash = (hash ^ static_cast<unsigned char>(c)) * 1099511628211ull;
            }
            hash = (hash ^ 0x2c) * 1099511628211ull;
        }
    }
    const bool frozen_ok =
        !full(o) || (same(error_sum, regression::kBruteErrorSum, 1e-12) && hash == regression::kBruteHash);
    r.data["cases"] = num(u64(cases));
    r.data["violations"] = num(u64(violations));
    r.data["undecided"] = num(u64(undecided));
    r.data["fallbacks"] = num(u64(fallbacks));
    if (full(o)) {
        r.data["frozen"] = Json{{"brute_error_sum", num(error_sum)}, {"brute_hash", num(hash)}};
    }
    r.pass = violations == 0 && undecided == 0 && frozen_ok;
    r.detail = std::to_string(cases) + " cases, " + std::to_string(violations) + " violations, " +
               std::to_string(undecided) + " undecided, " + std::to_string(fallbacks) +
               " answered by fallback; brute error sum " + num(error_sum) + (frozen_ok ? "" : " differs from frozen");
    return r;
}

// C10
Record density(const Options& o) {
    Record r;
    Rng rng(o.seed ^ 0x0a);
    std::vector<double> ks, ds;
    Json table = Json::array();
    int above = 0, vacuous = 0;
    for (unsigned k = 3; k <= 15; ++k) {
        const BigInt Q = pow(BigInt(10), k);
        const BigInt A = random_coprime(rng, Q);
        const auto rep = pipeline::measure_density(k23, circle::Angle(A, Q), 2);
        const double d = to_double(rep.dispersion);
        ks.push_back(k);
        ds.push_back(d);
        if (rep.reference_bound) {
            above += d <= *rep.reference_bound ? 0 : 1;
        }
        vacuous += rep.vacuous ? 1 : 0;
        table.push_back(Json{{"k", num(u64(k))}, {"A", str(A)}, {"count", num(u64(rep.count))},
                             {"dispersion", num(d)},
                             {"reference_bound", rep.reference_bound ? Json(num(*rep.reference_bound)) : Json(nullptr)},
                             {"vacuous", rep.vacuous}});
    }
    const double rho = oracle::spearman(ks, ds);
    const bool frozen_ok = same(rho, regression::kDensitySpearman, 1e-12);
    r.data["table"] = table;
    r.data["bound_failures"] = num(u64(above));
    r.data["vacuous_rows"] = num(u64(vacuous));
    r.data["frozen"] = Json{{"density_spearman", num(rho)}};
    r.pass = rho <= -0.8 && above == 0 && frozen_ok;
    r.detail = "Spearman " + num(rho) + " (limit -0.8), " + std::to_string(above) + " rows above the bound, " +
               std::to_string(vacuous) + " of 13 rows vacuous" + (frozen_ok ? "" : ", differs from frozen");
    return r;
}

// C11
Record baker(const Options&) {
    Record r;
    const auto probe = alpha::baker_probe(k23, kBeta, BigInt("10000000000"), 512);
    int bad = 0;
    for (const auto& row : probe.rows) {
        const BigInt& q = row.convergent.q;
        const Rational lower = make_rational(BigInt(1), q * (row.next_q + q));
        const Rational upper = make_rational(BigInt(1), q * row.next_q);
        bad += lower < row.distance.lo && row.distance.hi < upper ? 0 : 1;
    }
    const double c0 = to_double(probe.c0.mid());
    const bool frozen_ok = same(c0, regression::kBakerC0, 1e-12) && probe.argmin == regression::kBakerArgmin;
    r.data["rows"] = num(u64(probe.rows.size()));
    r.data["c0"] = str(probe.c0);
    r.data["bad_rows"] = num(u64(bad));
    r.data["frozen"] = Json{{"baker_c0", num(c0)}, {"baker_argmin", num(u64(probe.argmin))}};
    r.pass = bad == 0 && probe.c0.lo > 0 && frozen_ok;
    r.detail = std::to_string(probe.rows.size()) + " convergents, " + std::to_string(bad) + " uncertified, c0 = " +
               num(c0) + " at index " + std::to_string(probe.argmin) + (frozen_ok ? "" : ", differs from frozen");
    return r;
}

// C12
Record sentinel(const Options&) {
    Record r;
    const unsigned l = 14;
    const auto clean = scan5(l, std::nullopt);
    const auto flipped = scan5(l, 1);
    r.data["l"] = num(u64(l));
    r.data["clean_violations"] = num(u64(clean.violations.size()));
    r.data["mutant_violations"] = num(u64(flipped.violations.size()));
    r.pass = clean.violations.empty() && !flipped.violations.empty();
    r.detail = "l = " + std::to_string(l) + ": clean scan " + std::to_string(clean.violations.size()) +
               " violations, sign-flipped scan " + std::to_string(flipped.violations.size());
    return r;
}

struct Entry {
    const char* name;
    Record (*run)(const Options&);
};

const Entry kEntries[kCriterionCount] = {
    {"enumeration oracle", enumeration},
    {"lattice count", lattice_count},
    {"gaps", gaps},
    {"net construction", nets},
    {"lemma 5 scan", lemma5},
    {"lemma 6 energy", lemma6},
    {"lemma 7 remainder", lemma7},
    {"lemma 8 minimizer", lemma8},
    {"solver dominance", dominance},
    {"density trend", density},
    {"convergent probe", baker},
    {"mutation sentinel", sentinel},
};

}  // namespace

Record run_criterion(int id, const Options& options) {
    require(id >= 1 && id <= kCriterionCount, ErrorKind::parameter, "no criterion " + std::to_string(id));
    const auto& entry = kEntries[id - 1];
    const auto start = std::chrono::steady_clock::now();
    Record r;
    try {
        r = entry.run(options);
    } catch (const std::exception& e) {
        r = Record{};
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.id = id;
    r.name = entry.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (id == 1 && r.seconds >= 10) {
        r.pass = false;
        r.detail += ", over the 10 s limit";
    }
    if (id == 4 && r.seconds >= 120) {
        r.pass = false;
        r.detail += ", over the 2 min limit";
    }
    return r;
}

Summary verify_all(const Options& options) {
    Summary s;
    for (int id = 1; id <= kCriterionCount; ++id) {
        s.records.push_back(run_criterion(id, options));
    }
    return s;
}

bool Summary::pass() const {
    return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

io::Json Summary::constants() const {
    Json out = Json::object();
    for (const auto& r : records) {
        if (r.data.contains("frozen")) {
            for (const auto& [k, v] : r.data.at("frozen").items()) {
                out[k] = v;
            }
        }
    }
    return out;
}

io::Json to_json(const Record& r) {
    Json j;
    j["id"] = num(u64(r.id));
    j["name"] = r.name;
    j["pass"] = r.pass;
    j["seconds"] = num(r.seconds);
    j["detail"] = r.detail;
    j["data"] = r.data;
    return j;
}

io::Json to_json(const Summary& s) {
    Json records = Json::array();
    for (const auto& r : s.records) {
        records.push_back(to_json(r));
    }
    Json j;
    j["pass"] = s.pass();
    j["records"] = std::move(records);
    j["constants"] = s.constants();
    return j;
}

}  // namespace furst::verify

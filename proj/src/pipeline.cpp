#include "furst/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "furst/error.hpp"
#include "furst/parallel.hpp"

namespace furst::pipeline {

namespace {

unsigned long bit_length(const BigInt& x) { return static_cast<unsigned long>(mpz_sizeinbase(x.get_mpz_t(), 2)); }

bool is_decimal(const alpha::RealSpec& x) { return std::holds_alternative<alpha::DecimalText>(x.variant()); }

bool refinable(const alpha::RealSpec& x) { return !x.exact() && !is_decimal(x); }

}  // namespace

void PipelineConfig::validate() const {
    params.validate();
    require(Q >= 3, ErrorKind::precondition, "Q must be >= 3");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), Q.get_mpz_t());
    require(g == 1, ErrorKind::parameter, "A and Q must be coprime");
    require(delta > 0 && std::isfinite(delta), ErrorKind::parameter, "delta must be > 0");
    require(eps > 0 && eps < 0.125, ErrorKind::parameter, "eps must lie in (0, 1/8)");
    require(C > 0 && std::isfinite(C), ErrorKind::parameter, "C must be > 0");
    for (const auto& z : targets) {
        require(sgn(z) >= 0 && z <= 1, ErrorKind::parameter, "targets must lie in [0, 1]");
    }
    if (overrides.H) {
        require(*overrides.H > 1, ErrorKind::parameter, "H override must exceed 1");
    }
    require(budget > 0, ErrorKind::parameter, "element budget must be positive");
}

PipelineReport run_theorem1(const PipelineConfig& cfg) {
    cfg.validate();
    PipelineReport r;
    r.config = cfg;
    const auto& params = cfg.params;
    const double ln_a = std::log(static_cast<double>(params.a));
    const double ln_b = std::log(static_cast<double>(params.b));

    r.M = cfg.overrides.M ? *cfg.overrides.M : certified_floor_pow(cfg.Q, cfg.delta / 2);
    require(r.M >= 1, ErrorKind::structural, "M = floor(Q^(delta/2)) is zero");
    require(r.M < cfg.Q, ErrorKind::precondition,
            "M = " + to_string(r.M) + " is not below Q = " + to_string(cfg.Q));
    r.M1 = r.M * cfg.Q;
    const circle::Angle x(cfg.A, cfg.Q);

    r.net = netgen::build_net(params, x, r.M, {false, cfg.budget});
    const unsigned n_delta = netgen::choose_n(r.net.delta, params.a);
    r.n = cfg.overrides.n ? *cfg.overrides.n : n_delta;
    require(r.n >= 1, ErrorKind::structural, "digit length n = 0: the net is too coarse (delta > 1/a)");
    r.N = pow(params.a, r.n);
    const double loglogM = std::log(std::log(r.M.get_d()));
    r.n_target = loglogM > 0 ? cfg.C * std::pow(loglogM, 1 / (kBakerBeta - 1) - cfg.eps) : 0;

    const auto ds = netgen::digit_set(params, x, r.M1, r.n, cfg.budget);
    r.X_n = ds.size();
    if (r.n == n_delta) {
        r.lemma2 = netgen::verify_lemma2(r.net, ds);
    } else {
        r.lemma2.X_n = ds.size();
        r.lemma2.sqrtN_half = std::sqrt(r.N.get_d()) / 2;
        r.lemma2.pass = 4 * BigInt(from_u64(ds.size())) * from_u64(ds.size()) >= r.N;
    }

    r.l_raw = std::log(r.n * ln_a / (2 * ln_b)) / ln_a;
    if (cfg.overrides.l) {
        r.l = *cfg.overrides.l;
        require(r.l >= 1 && r.l <= r.n, ErrorKind::parameter, "l override must lie in [1, n]");
    } else {
        const double fl = std::floor(r.l_raw);
        if (fl < 1) {
            r.l = 1;
            r.l_clamped = true;
        } else if (fl > r.n) {
            r.l = r.n;
            r.l_clamped = true;
        } else {
            r.l = static_cast<unsigned>(fl);
        }
    }

    if (cfg.overrides.s) {
        const unsigned s = *cfg.overrides.s;
        require(s >= r.l && s <= r.n, ErrorKind::parameter, "s override must lie in [l, n]");
        auto strata = digits::stratify(ds, s, r.l);
        require(!strata.empty(), ErrorKind::structural, "empty projection");
        const digits::Stratum* best = nullptr;
        for (const auto& [lambda, st] : strata) {
            if (!best || st.X() > best->X()) {
                best = &st;
            }
        }
        r.search.best = *best;
        r.search.j = (r.n - s) / r.l;
        r.search.J = r.search.j;
        r.search.threshold = std::pow(static_cast<double>(params.a), (0.5 - 2 * cfg.eps) * r.l);
        r.search.pass = static_cast<double>(best->X()) >= r.search.threshold;
        r.search.grid_points = 1;
    } else {
        r.search = digits::combinatorial_search(ds, r.l, cfg.eps);
    }
    const unsigned s = r.search.best.s;
    r.M2 = r.M1 * pow(params.a, r.n - s);
    r.yset = digits::extract_y(r.search.best, r.M2);
    require(r.yset.Y() > 0, ErrorKind::structural, "empty stratum");

    const auto table = digits::witness_table(params, x, r.M2, s, cfg.budget);
    for (auto y : r.yset.members) {
        const auto xv = r.yset.x_of(y);
        auto it = table.find(xv);
        require(it != table.end(), ErrorKind::consistency,
                "no q in Sigma(M2) has leading digits " + std::to_string(xv));
        r.witnesses.emplace(xv, it->second);
    }

    r.H = cfg.overrides.H ? *cfg.overrides.H
                          : std::max(2.0, std::floor(std::pow(static_cast<double>(r.yset.Y()), 0.25 - cfg.eps)));
    r.subgroup = harmonics::subgroup(params, r.l);

    r.budget.rhs = certified_floor_pow(cfg.Q, 1 + cfg.delta);
    const BigInt a_l = pow(params.a, r.l);
    if (a_l <= (1u << 16)) {
        const BigInt b_pow = pow(params.b, static_cast<unsigned long>(a_l.get_ui()));
        r.budget.lhs = r.M1 * pow(params.a, r.n - s) * b_pow;
        r.budget.pass = *r.budget.lhs <= r.budget.rhs;
        r.budget.b_power_ok = b_pow * b_pow <= pow(params.a, s);
    }

    const BigInt a_s = pow(params.a, s);
    r.targets.resize(cfg.targets.size());
    parallel_for(cfg.targets.size(), [&](std::size_t i) {
        TargetResult t;
        t.z = cfg.targets[i];
        t.z.canonicalize();
        t.lemma8 = harmonics::lemma8_search(r.yset, r.subgroup, t.z, r.H);
        t.q_x = r.witnesses.at(t.lemma8.x);
        require(sunits::factor(params, t.q_x, t.u, t.v), ErrorKind::consistency, "witness is not in Sigma");
        const BigInt bw = pow(params.b, t.lemma8.w);
        t.q_star = t.q_x * bw;
        t.v += static_cast<unsigned>(t.lemma8.w);
        t.error = nearest_int_norm(circle::frac_mul(t.q_star, x).value() - t.z);
        t.exact_bound = t.lemma8.err + Rational(bw) / Rational(a_s);
        t.exact_bound.canonicalize();
        require(t.error <= t.exact_bound, ErrorKind::consistency,
                "q* error " + to_string(t.error) + " exceeds err8 + b^w/a^s");
        t.reference_bound = 1 / r.H + std::pow(static_cast<double>(params.a), -static_cast<double>(s) / 2);
        t.reference_bound_holds = to_double(t.error) <= t.reference_bound;
        t.within_budget = t.q_star <= r.budget.rhs;
        require(!r.budget.pass || t.within_budget, ErrorKind::consistency,
                "budget check passed but q* exceeds Q^(1+delta)");
        r.targets[i] = std::move(t);
    });
    return r;
}

RationalInterval approximation_error(const BigInt& q, const alpha::RealSpec& x, const alpha::RealSpec& beta,
                                     unsigned long bits) {
    const auto ex = x.exact();
    const auto eb = beta.exact();
    if (ex && eb) {
        return RationalInterval::point(nearest_int_norm(Rational(q) * *ex - *eb));
    }
    return nearest_int_norm(Rational(q) * x.enclose(bits) - beta.enclose(bits));
}

SolveResult brute_force_best(const sunits::SUnitParams& params, const alpha::RealSpec& x,
                             const alpha::RealSpec& beta, const BigInt& N, std::size_t budget) {
    require(N >= 1, ErrorKind::domain, "N must be >= 1");
    const auto elems = sunits::enumerate_sigma(params, N, budget);
    const bool can_refine = refinable(x) || refinable(beta);
    const bool exact = x.exact() && beta.exact();
    std::vector<RationalInterval> errs(elems.size());
    for (unsigned long bits = 2 * bit_length(N) + 64;; bits *= 2) {
        parallel_for(elems.size(), [&](std::size_t i) { errs[i] = approximation_error(elems[i].value, x, beta, bits); });
        std::size_t best = 0;
        for (std::size_t i = 1; i < errs.size(); ++i) {
            if (errs[i].hi < errs[best].hi) {
                best = i;
            }
        }
        bool decided = true;
        for (std::size_t j = 0; j < errs.size() && decided; ++j) {
            if (j == best) {
                continue;
            }
            const bool ok = j > best ? errs[j].lo >= errs[best].hi : errs[j].lo > errs[best].hi;
            decided = ok || (exact && errs[j].lo >= errs[best].hi);
        }
        if (decided) {
            SolveResult out;
            out.q = elems[best];
            out.error = errs[best];
            out.mode = SolveMode::brute;
            return out;
        }
        if (!can_refine || bits >= (1ul << 14)) {
            throw PrecisionError("cannot rank two candidates of the brute-force scan", 2 * bits);
        }
    }
}

namespace {

SolveResult fall_back(SolveResult brute, std::string reason, std::optional<alpha::DirichletPair> anchor) {
    brute.mode = SolveMode::pipeline;
    brute.fallback = true;
    brute.fallback_reason = std::move(reason);
    brute.anchor = std::move(anchor);
    brute.brute_error = brute.error;
    return brute;
}

}  // namespace

SolveResult solve_inhomogeneous(const sunits::SUnitParams& params, const alpha::RealSpec& x,
                                const alpha::RealSpec& beta, const BigInt& N, SolveMode mode,
                                const SolveOptions& options) {
    SolveResult brute = brute_force_best(params, x, beta, N, options.budget);
    if (mode == SolveMode::brute) {
        return brute;
    }
    const BigInt Qmax = certified_floor_pow(N, 1 / (1 + options.delta));
    if (Qmax < 3) {
        return fall_back(std::move(brute), "N too small for an anchor with Q >= 3", std::nullopt);
    }
    alpha::DirichletPair anchor = alpha::dirichlet_approx(x, Qmax);
    if (anchor.Q < 3) {
        return fall_back(std::move(brute), "anchor denominator Q < 3", anchor);
    }

    Rational z;
    if (auto b = beta.exact()) {
        z = frac(*b);
    } else {
        z = frac(beta.enclose(256).mid());
    }
    PipelineConfig cfg;
    cfg.params = params;
    cfg.Q = anchor.Q;
    cfg.A = anchor.A;
    mpz_fdiv_r(cfg.A.get_mpz_t(), cfg.A.get_mpz_t(), cfg.Q.get_mpz_t());
    cfg.delta = options.delta;
    cfg.eps = options.eps;
    cfg.targets = {z};
    cfg.budget = options.budget;

    PipelineReport report;
    try {
        report = run_theorem1(cfg);
    } catch (const PrecisionError&) {
        throw;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::precondition || e.kind() == ErrorKind::structural) {
            return fall_back(std::move(brute), std::string("pipeline declined: ") + e.what(), anchor);
        }
        throw;
    }
    const TargetResult& t = report.targets.front();
    if (t.q_star > N) {
        auto out = fall_back(std::move(brute), "pipeline q* exceeds N", anchor);
        out.report = std::move(report);
        return out;
    }

    SolveResult out;
    out.q = {t.u, t.v, t.q_star};
    out.mode = SolveMode::pipeline;
    out.error = approximation_error(t.q_star, x, beta, 2 * bit_length(N) + 128);
    out.anchor = anchor;
    out.brute_error = brute.error;
    require(!(out.error.hi < brute.error.lo), ErrorKind::consistency,
            "pipeline error below the brute-force minimum");
    out.report = std::move(report);
    return out;
}

std::optional<double> triple_log_bound(double log_x, double eps) {
    if (!(log_x > 1)) {
        return std::nullopt;
    }
    const double ll = std::log(log_x);
    if (!(ll > 1)) {
        return std::nullopt;
    }
    const double lll = std::log(ll);
    if (!(lll > 1)) {
        return std::nullopt;
    }
    return 1 / std::pow(lll, 0.125 - eps);
}

UniformReport solve_uniform(const sunits::SUnitParams& params, const alpha::RealSpec& x, const alpha::PsiSpec& psi,
                            const BigInt& N, double delta, double eps, std::size_t budget) {
    params.validate();
    require(delta > 0, ErrorKind::parameter, "delta must be > 0");
    UniformReport out;
    const auto witness = alpha::psi_bad_witness(x, psi, N);
    out.Psi_N = witness.Psi_N;
    if (witness.violated) {
        out.violated = true;
        out.violating_q = witness.violating_q;
        return out;
    }
    out.anchor = witness.pair;
    const BigInt& Q = out.anchor->Q;
    out.Psi_le_Q = out.Psi_N <= Q.get_d();
    BigInt A = out.anchor->A;
    mpz_fdiv_r(A.get_mpz_t(), A.get_mpz_t(), Q.get_mpz_t());

    if (Q >= 3) {
        PipelineConfig cfg;
        cfg.params = params;
        cfg.A = A;
        cfg.Q = Q;
        cfg.delta = delta;
        cfg.eps = eps;
        cfg.targets = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
        cfg.budget = budget;
        try {
            out.report = run_theorem1(cfg);
        } catch (const PrecisionError&) {
            throw;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::precondition && e.kind() != ErrorKind::structural) {
                throw;
            }
            out.pipeline_error = e.what();
        }
    } else {
        out.pipeline_error = "anchor denominator Q < 3";
    }

    const circle::Angle anchor_angle(A, Q);
    const BigInt bound = certified_floor_pow(Q, 1 + delta);
    const auto cloud = circle::sigma_alpha(params, bound, anchor_angle, budget);
    out.cloud_size = cloud.size();
    out.dispersion = circle::dispersion(cloud, circle::Metric::interval);
    out.reference_bound = out.Psi_N > 0 ? triple_log_bound(std::log(out.Psi_N), eps) : std::nullopt;
    out.vacuous = !out.reference_bound || *out.reference_bound >= 0.5;
    return out;
}

DensityReport measure_density(const sunits::SUnitParams& params, const circle::Angle& x, double exponent,
                              double eps, std::size_t budget) {
    params.validate();
    require(exponent > 0 && std::isfinite(exponent), ErrorKind::parameter, "exponent must be > 0");
    DensityReport out;
    out.Q = x.den();
    require(out.Q >= 2, ErrorKind::domain, "measure_density needs Q >= 2");
    out.bound = certified_floor_pow(out.Q, exponent);
    const auto elems = sunits::enumerate_sigma(params, out.bound, budget);
    out.count = elems.size();
    std::vector<Rational> values;
    values.reserve(elems.size());
    for (const auto& e : elems) {
        values.push_back(circle::frac_mul(e.value, x).value());
    }
    out.dispersion = circle::dispersion(circle::PointSet::from_values(std::move(values)), circle::Metric::interval);
    out.reference_bound = triple_log_bound(std::log(out.Q.get_d()), eps);
    out.vacuous = !out.reference_bound || *out.reference_bound >= 0.5;
    return out;
}

}  // namespace furst::pipeline

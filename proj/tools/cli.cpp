#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "furst/alpha.hpp"
#include "furst/circle.hpp"
#include "furst/digits.hpp"
#include "furst/error.hpp"
#include "furst/harmonics.hpp"
#include "furst/json_io.hpp"
#include "furst/netgen.hpp"
#include "furst/parallel.hpp"
#include "furst/pipeline.hpp"
#include "furst/rng.hpp"
#include "furst/sunits.hpp"
#include "furst/verify.hpp"

namespace furst::cli {

namespace {

using io::Json;
using io::num;
using io::str;
using u64 = std::uint64_t;

enum class Format { human, json, csv };

struct Common {
    u64 a = 2;
    u64 b = 3;
    std::size_t budget = sunits::kDefaultElementBudget;
    bool json = false;
    bool csv = false;

    Format format() const {
        require(!(json && csv), ErrorKind::parameter, "--json and --csv are exclusive");
        return json ? Format::json : csv ? Format::csv : Format::human;
    }
    sunits::SUnitParams params() const {
        sunits::SUnitParams p{a, b};
        p.validate();
        return p;
    }
};

void add_pair(CLI::App* sub, Common& c) {
    sub->add_option("--a", c.a, "first base")->capture_default_str();
    sub->add_option("--b", c.b, "second base")->capture_default_str();
    sub->add_option("--budget", c.budget, "cap on enumerated elements")->capture_default_str();
}

void add_format(CLI::App* sub, Common& c, bool with_csv) {
    sub->add_flag("--json", c.json, "emit JSON");
    if (with_csv) {
        sub->add_flag("--csv", c.csv, "emit CSV");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::parameter, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parameter, "malformed " + what + ": " + e.what());
    }
}

// Inline JSON, or a path to a file holding it.
alpha::RealSpec read_spec(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    const bool inline_json = first != std::string::npos && arg[first] == '{';
    return alpha::RealSpec::from_json(parse_json(inline_json ? arg : read_file(arg), "RealSpec"));
}

void emit(std::ostream& out, const std::string& kind, Json payload) {
    out << io::envelope(kind, std::move(payload)).dump(2) << '\n';
}

std::vector<u64> parse_members(const std::string& text) {
    std::vector<u64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(io::get_u64(Json(item)));
        }
    }
    return out;
}

struct YInput {
    std::string members;
    u64 random_size = 0;
    u64 seed = 0;
    std::string gamma = "0";

    digits::YSet make(u64 a, unsigned l) const {
        std::vector<u64> ys;
        if (!members.empty()) {
            ys = parse_members(members);
        } else {
            require(random_size > 0, ErrorKind::parameter, "give --members or --random-size");
            const u64 P = checked_pow_u64(a, l);
            require(P != 0 && random_size <= P, ErrorKind::parameter, "--random-size exceeds a^l");
            Rng rng(seed);
            std::set<u64> picked;
            while (picked.size() < random_size) {
                picked.insert(rng.below(P));
            }
            ys.assign(picked.begin(), picked.end());
        }
        return digits::make_yset(a, l, std::move(ys), circle::Angle::parse(gamma));
    }
};

void add_yinput(CLI::App* sub, YInput& y) {
    sub->add_option("--members", y.members, "comma-separated elements of Y");
    sub->add_option("--random-size", y.random_size, "draw Y at random with this many elements");
    sub->add_option("--seed", y.seed, "seed for --random-size")->capture_default_str();
    sub->add_option("--gamma", y.gamma, "shift p/q")->capture_default_str();
}

struct State {
    std::ostream& out;
    std::ostream& err;
    int exit_code = kExitOk;
};

void setup_sunits(CLI::App& app, State& st) {
    auto* grp = app.add_subcommand("sunits", "enumerate and count a^u b^v");
    grp->require_subcommand(1);

    auto c = std::make_shared<Common>();
    auto M = std::make_shared<std::string>();
    auto* en = grp->add_subcommand("enum", "list Sigma(M) in increasing order");
    add_pair(en, *c);
    add_format(en, *c, true);
    en->add_option("--M", *M, "bound")->required();
    en->callback([c, M, &st] {
        const auto elems = sunits::enumerate_sigma(c->params(), parse_bigint(*M), c->budget);
        switch (c->format()) {
            case Format::csv:
                st.out << "u,v,value\n";
                for (const auto& e : elems) {
                    st.out << e.u << ',' << e.v << ',' << to_string(e.value) << '\n';
                }
                break;
            case Format::json: {
                Json arr = Json::array();
                for (const auto& e : elems) {
                    arr.push_back(io::to_json(e));
                }
                emit(st.out, "sunits.enum",
                     Json{{"a", num(c->a)}, {"b", num(c->b)}, {"M", *M}, {"count", num(u64(elems.size()))},
                          {"elements", arr}});
                break;
            }
            case Format::human:
                for (const auto& e : elems) {
                    st.out << to_string(e.value) << " = " << c->a << '^' << e.u << " * " << c->b << '^' << e.v << '\n';
                }
        }
    });

    auto cg = std::make_shared<Common>();
    auto gM = std::make_shared<std::string>();
    auto beta = std::make_shared<double>(pipeline::kBakerBeta);
    auto* gaps = grp->add_subcommand("gaps", "gaps between consecutive elements");
    add_pair(gaps, *cg);
    add_format(gaps, *cg, true);
    gaps->add_option("--M", *gM, "bound")->required();
    gaps->add_option("--beta", *beta, "exponent in the normalization")->capture_default_str();
    gaps->callback([cg, gM, beta, &st] {
        const auto rep = sunits::gap_report(cg->params(), parse_bigint(*gM), *beta, cg->budget);
        switch (cg->format()) {
            case Format::csv:
                st.out << "q,gap\n";
                for (const auto& g : rep.gaps) {
                    st.out << to_string(g.q) << ',' << to_string(g.gap) << '\n';
                }
                break;
            case Format::json:
                emit(st.out, "sunits.gaps", io::to_json(rep));
                break;
            case Format::human:
                st.out << "max gap " << to_string(rep.max_gap) << " between " << to_string(rep.argmax_pair.first)
                       << " and " << to_string(rep.argmax_pair.second) << "\nnormalized constant "
                       << num(rep.normalized_constant) << '\n';
        }
    });

    auto cc = std::make_shared<Common>();
    auto cM = std::make_shared<std::string>();
    auto quadrant = std::make_shared<std::string>("nonneg");
    auto* count = grp->add_subcommand("count", "exact count of Sigma(M) against the two-term estimate");
    add_pair(count, *cc);
    add_format(count, *cc, false);
    count->add_option("--M", *cM, "bound")->required();
    count->add_option("--quadrant", *quadrant, "nonneg or positive")
        ->check(CLI::IsMember({"nonneg", "positive"}))
        ->capture_default_str();
    count->callback([cc, cM, quadrant, &st] {
        const auto q = *quadrant == "nonneg" ? sunits::Quadrant::nonneg : sunits::Quadrant::positive;
        const auto r = sunits::count_lattice_log(cc->params(), parse_bigint(*cM), q, cc->budget);
        if (cc->format() == Format::json) {
            emit(st.out, "sunits.count",
                 Json{{"M", *cM}, {"quadrant", *quadrant}, {"count", str(r.count)},
                      {"two_term_estimate", num(r.two_term_estimate)}});
        } else {
            st.out << to_string(r.count) << " (estimate " << num(r.two_term_estimate) << ")\n";
        }
    });
}

void setup_circle(CLI::App& app, State& st) {
    auto* grp = app.add_subcommand("circle", "points on the unit interval");
    grp->require_subcommand(1);

    auto file = std::make_shared<std::string>();
    auto metric = std::make_shared<std::string>("interval");
    auto cd = std::make_shared<Common>();
    auto* disp = grp->add_subcommand("dispersion", "dispersion of a point list");
    disp->add_option("--points-file", *file, "one p/q per line")->required();
    disp->add_option("--metric", *metric, "interval or circular")
        ->check(CLI::IsMember({"interval", "circular"}))
        ->capture_default_str();
    add_format(disp, *cd, false);
    disp->callback([file, metric, cd, &st] {
        std::istringstream in(read_file(*file));
        std::vector<Rational> values;
        std::string line;
        while (std::getline(in, line)) {
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') {
                continue;
            }
            const auto last = line.find_last_not_of(" \t\r");
            values.push_back(parse_rational(line.substr(first, last - first + 1)));
        }
        const auto points = circle::PointSet::from_values(std::move(values));
        const auto m = *metric == "interval" ? circle::Metric::interval : circle::Metric::circular;
        const Rational d = circle::dispersion(points, m);
        if (cd->format() == Format::json) {
            emit(st.out, "circle.dispersion",
                 Json{{"metric", *metric}, {"points", num(u64(points.size()))}, {"dispersion", str(d)}});
        } else {
            st.out << to_string(d) << '\n';
        }
    });

    auto cs = std::make_shared<Common>();
    auto M = std::make_shared<std::string>();
    auto A = std::make_shared<std::string>();
    auto Q = std::make_shared<std::string>();
    auto* sig = grp->add_subcommand("sigma-alpha", "fractional parts {q A/Q} for q in Sigma(M)");
    add_pair(sig, *cs);
    add_format(sig, *cs, true);
    sig->add_option("--M", *M, "bound")->required();
    sig->add_option("--A", *A, "numerator")->required();
    sig->add_option("--Q", *Q, "denominator")->required();
    sig->callback([cs, M, A, Q, &st] {
        const circle::Angle alpha(parse_bigint(*A), parse_bigint(*Q));
        const auto pts = circle::sigma_alpha(cs->params(), parse_bigint(*M), alpha, cs->budget);
        if (cs->format() == Format::json) {
            Json arr = Json::array();
            for (const auto& p : pts) {
                arr.push_back(str(p));
            }
            emit(st.out, "circle.sigma_alpha",
                 Json{{"alpha", alpha.str()}, {"M", *M}, {"count", num(u64(pts.size()))}, {"points", arr}});
        } else {
            if (cs->format() == Format::csv) {
                st.out << "point\n";
            }
            for (const auto& p : pts) {
                st.out << to_string(p) << '\n';
            }
        }
    });
}

void setup_alpha(CLI::App& app, State& st) {
    auto* grp = app.add_subcommand("alpha", "continued fractions and Diophantine approximation");
    grp->require_subcommand(1);

    auto spec = std::make_shared<std::string>();
    auto limit = std::make_shared<std::string>("10000000000");
    auto cc = std::make_shared<Common>();
    auto* conv = grp->add_subcommand("convergents", "certified convergents p/q with q <= --q-limit");
    conv->add_option("--spec", *spec, "RealSpec JSON, inline or a file")->required();
    conv->add_option("--q-limit", *limit, "largest denominator")->capture_default_str();
    add_format(conv, *cc, true);
    conv->callback([spec, limit, cc, &st] {
        const auto cs = alpha::convergents(read_spec(*spec), parse_bigint(*limit));
        switch (cc->format()) {
            case Format::json: {
                Json arr = Json::array();
                for (const auto& c : cs) {
                    arr.push_back(io::to_json(c));
                }
                emit(st.out, "alpha.convergents", Json{{"q_limit", *limit}, {"convergents", arr}});
                break;
            }
            case Format::csv:
                st.out << "index,p,q\n";
                for (const auto& c : cs) {
                    st.out << c.index << ',' << to_string(c.p) << ',' << to_string(c.q) << '\n';
                }
                break;
            case Format::human:
                for (const auto& c : cs) {
                    st.out << to_string(c.p) << '/' << to_string(c.q) << '\n';
                }
        }
    });

    auto dspec = std::make_shared<std::string>();
    auto N = std::make_shared<std::string>();
    auto cd = std::make_shared<Common>();
    auto* dir = grp->add_subcommand("dirichlet", "A/Q with Q <= N and |x - A/Q| <= 1/(QN)");
    dir->add_option("--spec", *dspec, "RealSpec JSON, inline or a file")->required();
    dir->add_option("--N", *N, "denominator bound")->required();
    add_format(dir, *cd, false);
    dir->callback([dspec, N, cd, &st] {
        const auto d = alpha::dirichlet_approx(read_spec(*dspec), parse_bigint(*N));
        if (cd->format() == Format::json) {
            emit(st.out, "alpha.dirichlet", io::to_json(d));
        } else {
            st.out << to_string(d.A) << '/' << to_string(d.Q) << '\n';
        }
    });

    auto pspec = std::make_shared<std::string>();
    auto pN = std::make_shared<std::string>();
    auto psi = std::make_shared<alpha::PsiSpec>();
    auto cp = std::make_shared<Common>();
    auto* ps = grp->add_subcommand("psi", "search convergents for q ||q x|| < psi(q)");
    ps->add_option("--spec", *pspec, "RealSpec JSON, inline or a file")->required();
    ps->add_option("--N", *pN, "bound")->required();
    ps->add_option("--k1", psi->k1, "psi(q) = k1 q^-k2")->capture_default_str();
    ps->add_option("--k2", psi->k2, "psi(q) = k1 q^-k2")->capture_default_str();
    add_format(ps, *cp, false);
    ps->callback([pspec, pN, psi, cp, &st] {
        const auto w = alpha::psi_bad_witness(read_spec(*pspec), *psi, parse_bigint(*pN));
        if (cp->format() == Format::json) {
            emit(st.out, "alpha.psi", io::to_json(w));
        } else if (w.violated) {
            st.out << "violated at q = " << to_string(w.violating_q) << '\n';
        } else {
            st.out << "not violated; Dirichlet pair " << to_string(w.pair->A) << '/' << to_string(w.pair->Q) << '\n';
        }
    });

    auto cb = std::make_shared<Common>();
    auto blimit = std::make_shared<std::string>("10000000000");
    auto beta = std::make_shared<double>(pipeline::kBakerBeta);
    auto bits = std::make_shared<unsigned long>(512);
    auto* baker = grp->add_subcommand("baker", "q^beta |log a/log b - p/q| over convergents");
    add_pair(baker, *cb);
    add_format(baker, *cb, true);
    baker->add_option("--q-limit", *blimit, "largest denominator")->capture_default_str();
    baker->add_option("--beta", *beta, "exponent")->capture_default_str();
    baker->add_option("--bits", *bits, "working precision")->capture_default_str();
    baker->callback([cb, blimit, beta, bits, &st] {
        const auto p = alpha::baker_probe(cb->params(), *beta, parse_bigint(*blimit), *bits);
        switch (cb->format()) {
            case Format::json:
                emit(st.out, "alpha.baker", io::to_json(p));
                break;
            case Format::csv:
                st.out << "index,p,q,next_q,scaled_lo\n";
                for (const auto& r : p.rows) {
                    st.out << r.convergent.index << ',' << to_string(r.convergent.p) << ','
                           << to_string(r.convergent.q) << ',' << to_string(r.next_q) << ','
                           << num(to_double(r.scaled.lo)) << '\n';
                }
                break;
            case Format::human:
                st.out << "c0 = " << num(to_double(p.c0.lo)) << " at q = " << to_string(p.rows[p.argmin].convergent.q)
                       << " (" << p.rows.size() << " convergents)\n";
        }
    });
}

void setup_net(CLI::App& app, State& st) {
    auto* grp = app.add_subcommand("net", "closest pair and the derived net");
    grp->require_subcommand(1);

    auto c = std::make_shared<Common>();
    auto A = std::make_shared<std::string>();
    auto Q = std::make_shared<std::string>();
    auto M = std::make_shared<std::string>();
    auto points = std::make_shared<bool>(false);
    auto collisions = std::make_shared<bool>(false);
    auto* build = grp->add_subcommand("build", "build the net for A/Q from Sigma(M)");
    add_pair(build, *c);
    add_format(build, *c, false);
    build->add_option("--A", *A, "numerator")->required();
    build->add_option("--Q", *Q, "denominator")->required();
    build->add_option("--M", *M, "bound")->required();
    build->add_flag("--emit-points", *points, "include the net itself");
    build->add_flag("--allow-collisions", *collisions, "accept M >= Q");
    build->callback([c, A, Q, M, points, collisions, &st] {
        netgen::NetOptions opt;
        opt.allow_collisions = *collisions;
        opt.budget = c->budget;
        const auto r = netgen::build_net(c->params(), circle::Angle(parse_bigint(*A), parse_bigint(*Q)),
                                         parse_bigint(*M), opt);
        if (c->format() == Format::json) {
            emit(st.out, "net.build", io::to_json(r, *points));
        } else {
            st.out << "closest pair " << r.eta_lo.str() << " .. " << r.eta_hi.str() << " (q = " << to_string(r.q_lo)
                   << ", " << to_string(r.q_hi) << ")\nd = " << to_string(r.d) << "\nnet size " << r.net.size()
                   << ", dispersion " << to_string(r.measured_dispersion) << " <= " << to_string(r.delta) << '\n';
            if (*points) {
                for (const auto& p : r.net) {
                    st.out << to_string(p) << '\n';
                }
            }
        }
    });

    auto cd = std::make_shared<Common>();
    auto dA = std::make_shared<std::string>();
    auto dQ = std::make_shared<std::string>();
    auto M1 = std::make_shared<std::string>();
    auto n = std::make_shared<unsigned>(8);
    auto* dig = grp->add_subcommand("digits", "DigitSet {q A/Q} mod a^n for q in Sigma(M1)");
    add_pair(dig, *cd);
    dig->add_option("--A", *dA, "numerator")->required();
    dig->add_option("--Q", *dQ, "denominator")->required();
    dig->add_option("--M1", *M1, "bound")->required();
    dig->add_option("--n", *n, "number of digits")->capture_default_str();
    dig->callback([cd, dA, dQ, M1, n, &st] {
        const auto ds = netgen::digit_set(cd->params(), circle::Angle(parse_bigint(*dA), parse_bigint(*dQ)),
                                          parse_bigint(*M1), *n, cd->budget);
        emit(st.out, "digitset", io::to_json(ds));
    });
}

void setup_digits(CLI::App& app, State& st) {
    auto* grp = app.add_subcommand("digits", "digit strata");
    grp->require_subcommand(1);
    auto in = std::make_shared<std::string>();
    auto l = std::make_shared<unsigned>(1);
    auto eps = std::make_shared<double>(0.05);
    auto c = std::make_shared<Common>();
    auto* search = grp->add_subcommand("search", "densest stratum over the (s, lambda) grid");
    search->add_option("--in", *in, "DigitSet JSON file")->required();
    search->add_option("--l", *l, "block length")->required();
    search->add_option("--eps", *eps, "epsilon")->capture_default_str();
    add_format(search, *c, false);
    search->callback([in, l, eps, c, &st] {
        const auto ds = io::digit_set_from_json(parse_json(read_file(*in), "DigitSet"));
        const auto r = digits::combinatorial_search(ds, *l, *eps);
        if (c->format() == Format::json) {
            emit(st.out, "digits.search", io::to_json(r));
        } else {
            st.out << "s = " << r.best.s << ", lambda = " << r.best.lambda << ", X = " << r.best.X()
                   << ", threshold " << num(r.threshold) << (r.pass ? " (met)" : " (not met)") << '\n';
        }
    });
}

void setup_harmonics(CLI::App& app, State& st) {
    auto* grp = app.add_subcommand("harmonics", "subgroup <b> mod a^l and its exponential sums");
    grp->require_subcommand(1);

    auto c = std::make_shared<Common>();
    auto l = std::make_shared<unsigned>(1);
    auto* order = grp->add_subcommand("order", "multiplicative order of b mod a^l");
    add_pair(order, *c);
    order->add_option("--l", *l, "exponent")->required();
    order->callback([c, l, &st] {
        c->params();
        st.out << harmonics::mult_order(c->b, c->a, *l) << '\n';
    });

    auto cs = std::make_shared<Common>();
    auto sl = std::make_shared<unsigned>(1);
    auto* sub = grp->add_subcommand("subgroup", "subgroup descriptor");
    add_pair(sub, *cs);
    add_format(sub, *cs, false);
    sub->add_option("--l", *sl, "exponent")->required();
    sub->callback([cs, sl, &st] {
        const auto d = harmonics::subgroup(cs->params(), *sl);
        if (cs->format() == Format::json) {
            emit(st.out, "harmonics.subgroup", io::to_json(d));
        } else {
            st.out << "S = " << d.S << ", phi = " << d.phi << ", kappa = " << d.kappa << ", l1 = " << d.l1 << '\n';
        }
    });

    auto c5 = std::make_shared<Common>();
    auto l5 = std::make_shared<unsigned>(1);
    auto tol = std::make_shared<double>(1e-6);
    auto* l5cmd = grp->add_subcommand("lemma5", "scan of sum over the subgroup of e(m s / a^l)");
    add_pair(l5cmd, *c5);
    add_format(l5cmd, *c5, true);
    l5cmd->add_option("--l", *l5, "exponent")->required();
    l5cmd->add_option("--tolerance", *tol, "relative vanishing tolerance")->capture_default_str();
    l5cmd->callback([c5, l5, tol, &st] {
        const auto d = harmonics::subgroup(c5->params(), *l5);
        if (c5->format() == Format::csv) {
            st.out << "m,re,im,abs\n";
            for (u64 m = 1; m < d.modulus; ++m) {
                const auto v = harmonics::exp_sum(d, from_u64(m));
                st.out << m << ',' << num(v.re) << ',' << num(v.im) << ',' << num(v.abs()) << '\n';
            }
            return;
        }
        harmonics::Lemma5Options opt;
        opt.tolerance = *tol;
        const auto s = harmonics::lemma5_scan(d, opt);
        if (c5->format() == Format::json) {
            emit(st.out, "harmonics.lemma5", io::to_json(s));
        } else {
            st.out << s.scanned << " scanned, " << s.violations.size() << " violations, empirical threshold "
                   << s.empirical_threshold << (s.vacuous ? " (vacuous)" : "") << '\n';
        }
    });

    auto c6 = std::make_shared<Common>();
    auto l6 = std::make_shared<unsigned>(1);
    auto y6 = std::make_shared<YInput>();
    auto mmax = std::make_shared<u64>(64);
    auto* l6cmd = grp->add_subcommand("lemma6", "sum over w of |sigma(m b^w)|^2 against its bound");
    add_pair(l6cmd, *c6);
    add_format(l6cmd, *c6, true);
    add_yinput(l6cmd, *y6);
    l6cmd->add_option("--l", *l6, "exponent")->required();
    l6cmd->add_option("--m-max", *mmax, "scan m = 1..m-max")->capture_default_str();
    l6cmd->callback([c6, l6, y6, mmax, &st] {
        const auto d = harmonics::subgroup(c6->params(), *l6);
        const auto y = y6->make(c6->a, *l6);
        const harmonics::YSpectrum spectrum(y);
        Json rows = Json::array();
        bool all = true;
        if (c6->format() == Format::csv) {
            st.out << "m,lhs,rhs,ratio\n";
        }
        for (u64 m = 1; m <= *mmax; ++m) {
            const auto r = harmonics::lemma6_check(spectrum, y, d, from_u64(m));
            all = all && r.holds;
            if (c6->format() == Format::csv) {
                st.out << m << ',' << num(r.lhs) << ',' << num(r.rhs) << ',' << num(r.ratio) << '\n';
            } else {
                Json row = io::to_json(r);
                row["m"] = num(m);
                rows.push_back(std::move(row));
            }
        }
        if (c6->format() == Format::json) {
            emit(st.out, "harmonics.lemma6",
                 Json{{"seed", num(y6->seed)}, {"Y", num(u64(y.Y()))}, {"holds", all}, {"rows", rows}});
        } else if (c6->format() == Format::human) {
            st.out << (all ? "holds" : "fails") << " for m = 1.." << *mmax << '\n';
        }
    });

    auto c7 = std::make_shared<Common>();
    auto l7 = std::make_shared<unsigned>(1);
    auto y7 = std::make_shared<YInput>();
    auto H7 = std::make_shared<double>(4);
    auto z7 = std::make_shared<std::string>("1/3");
    auto* l7cmd = grp->add_subcommand("lemma7", "remainder profile over the subgroup");
    add_pair(l7cmd, *c7);
    add_format(l7cmd, *c7, true);
    add_yinput(l7cmd, *y7);
    l7cmd->add_option("--l", *l7, "exponent")->required();
    l7cmd->add_option("--H", *H7, "bump width parameter")->capture_default_str();
    l7cmd->add_option("--z", *z7, "target p/q")->capture_default_str();
    l7cmd->callback([c7, l7, y7, H7, z7, &st] {
        const auto d = harmonics::subgroup(c7->params(), *l7);
        const auto y = y7->make(c7->a, *l7);
        const auto r = harmonics::lemma7_check(y, d, harmonics::BumpSpec{*H7}, parse_rational(*z7));
        switch (c7->format()) {
            case Format::csv:
                st.out << "w,R\n";
                for (std::size_t w = 0; w < r.profile.size(); ++w) {
                    st.out << w << ',' << num(r.profile[w]) << '\n';
                }
                break;
            case Format::json: {
                Json j = io::to_json(r, false);
                j["seed"] = num(y7->seed);
                emit(st.out, "harmonics.lemma7", std::move(j));
                break;
            }
            case Format::human:
                st.out << "mean square " << num(r.mean_square) << ", ratio " << num(r.ratio) << ", best w "
                       << r.best_w << " with R = " << num(r.best_R) << '\n';
        }
    });

    auto c8 = std::make_shared<Common>();
    auto l8 = std::make_shared<unsigned>(1);
    auto s8 = std::make_shared<unsigned>(0);
    auto lambda = std::make_shared<u64>(0);
    auto y8 = std::make_shared<YInput>();
    auto H8 = std::make_shared<double>(4);
    auto z8 = std::make_shared<std::string>("1/3");
    auto* l8cmd = grp->add_subcommand("lemma8", "minimize || b^w x / a^s - z || over w and x");
    add_pair(l8cmd, *c8);
    add_format(l8cmd, *c8, false);
    l8cmd->add_option("--members", y8->members, "comma-separated elements of Y");
    l8cmd->add_option("--random-size", y8->random_size, "draw Y at random with this many elements");
    l8cmd->add_option("--seed", y8->seed, "seed for --random-size")->capture_default_str();
    l8cmd->add_option("--l", *l8, "exponent")->required();
    l8cmd->add_option("--s", *s8, "digits of x (default l)");
    l8cmd->add_option("--lambda", *lambda, "low digits of x")->capture_default_str();
    l8cmd->add_option("--H", *H8, "success threshold 1/H")->capture_default_str();
    l8cmd->add_option("--z", *z8, "target p/q")->capture_default_str();
    l8cmd->callback([c8, l8, s8, lambda, y8, H8, z8, &st] {
        const unsigned s = *s8 == 0 ? *l8 : *s8;
        require(s >= *l8 && s < 64, ErrorKind::parameter, "--s must lie in [l, 64)");
        const u64 P = checked_pow_u64(c8->a, s);
        require(P != 0 && *lambda < P, ErrorKind::parameter, "--lambda must be below a^s");
        YInput in = *y8;
        in.gamma = to_string(make_rational(from_u64(*lambda), from_u64(P)));
        auto y = in.make(c8->a, *l8);
        y.s = s;
        y.lambda = *lambda;
        const auto d = harmonics::subgroup(c8->params(), *l8);
        const auto r = harmonics::lemma8_search(y, d, parse_rational(*z8), *H8);
        if (c8->format() == Format::json) {
            emit(st.out, "harmonics.lemma8", io::to_json(r));
        } else {
            st.out << "w = " << r.w << ", x = " << r.x << ", err = " << to_string(r.err)
                   << (r.success ? " (success)" : " (no success)") << '\n';
        }
    });
}

BigInt random_coprime(Rng& rng, const BigInt& Q) {
    for (;;) {
        BigInt A = rng.below(Q - 1) + 1;
        if (gcd(A, Q) == 1) {
            return A;
        }
    }
}

void setup_pipeline(CLI::App& app, State& st) {
    auto config = std::make_shared<std::string>();
    auto seed = std::make_shared<u64>(0);
    auto out_path = std::make_shared<std::string>();
    auto points = std::make_shared<bool>(false);
    auto* run = app.add_subcommand("run", "run the full construction from a config file");
    run->add_option("--config", *config, "config JSON file")->required();
    run->add_option("--seed", *seed, "seed for a missing A or missing targets")->capture_default_str();
    run->add_option("--out", *out_path, "write the report here instead of stdout");
    run->add_flag("--emit-points", *points, "include the net in the report");
    run->callback([config, seed, out_path, points, &st] {
        const auto j = parse_json(read_file(*config), "config");
        auto cfg = io::config_from_json(j);
        Rng rng(*seed);
        if (!j.contains("A")) {
            require(cfg.Q >= 3, ErrorKind::precondition, "Q must be at least 3");
            cfg.A = random_coprime(rng, cfg.Q);
        }
        if (!j.contains("targets")) {
            for (int k = 0; k < 3; ++k) {
                const u64 den = rng.range(2, 1000);
                cfg.targets.push_back(make_rational(from_u64(rng.below(den)), from_u64(den)));
            }
        }
        const auto rep = pipeline::run_theorem1(cfg);
        Json payload = Json{{"seed", num(*seed)}};
        Json body = io::to_json(rep, *points);
        for (auto& [k, v] : body.items()) {
            payload[k] = v;
        }
        const auto text = io::envelope("pipeline.report", std::move(payload)).dump(2) + "\n";
        if (out_path->empty()) {
            st.out << text;
        } else {
            std::ofstream f(*out_path, std::ios::binary);
            require(static_cast<bool>(f), ErrorKind::parameter, "cannot write " + *out_path);
            f << text;
        }
    });

    auto c = std::make_shared<Common>();
    auto aspec = std::make_shared<std::string>();
    auto bspec = std::make_shared<std::string>();
    auto N = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("brute");
    auto opts = std::make_shared<pipeline::SolveOptions>();
    auto* solve = app.add_subcommand("solve", "best q in Sigma(N) for ||q alpha - beta||");
    add_pair(solve, *c);
    add_format(solve, *c, false);
    solve->add_option("--alpha", *aspec, "RealSpec JSON, inline or a file")->required();
    solve->add_option("--beta", *bspec, "RealSpec JSON, inline or a file")->required();
    solve->add_option("--N", *N, "bound")->required();
    solve->add_option("--mode", *mode, "brute or pipeline")
        ->check(CLI::IsMember({"brute", "pipeline"}))
        ->capture_default_str();
    solve->add_option("--delta", opts->delta, "pipeline delta")->capture_default_str();
    solve->add_option("--eps", opts->eps, "pipeline epsilon")->capture_default_str();
    solve->callback([c, aspec, bspec, N, mode, opts, &st] {
        auto o = *opts;
        o.budget = c->budget;
        const auto m = *mode == "brute" ? pipeline::SolveMode::brute : pipeline::SolveMode::pipeline;
        const auto r = pipeline::solve_inhomogeneous(c->params(), read_spec(*aspec), read_spec(*bspec),
                                                     parse_bigint(*N), m, o);
        if (c->format() == Format::json) {
            emit(st.out, "solve", io::to_json(r));
        } else {
            st.out << "q = " << to_string(r.q.value) << " = " << c->a << '^' << r.q.u << " * " << c->b << '^'
                   << r.q.v << ", error in [" << num(to_double(r.error.lo)) << ", " << num(to_double(r.error.hi))
                   << "]" << (r.fallback ? " (fallback: " + r.fallback_reason + ")" : "") << '\n';
        }
    });

    auto cu = std::make_shared<Common>();
    auto uspec = std::make_shared<std::string>();
    auto uN = std::make_shared<std::string>();
    auto psi = std::make_shared<alpha::PsiSpec>();
    auto udelta = std::make_shared<double>(1);
    auto ueps = std::make_shared<double>(0.05);
    auto* uni = app.add_subcommand("uniform", "uniform approximation for psi-badly approximable alpha");
    add_pair(uni, *cu);
    add_format(uni, *cu, false);
    uni->add_option("--alpha", *uspec, "RealSpec JSON, inline or a file")->required();
    uni->add_option("--N", *uN, "bound")->required();
    uni->add_option("--k1", psi->k1, "psi(q) = k1 q^-k2")->capture_default_str();
    uni->add_option("--k2", psi->k2, "psi(q) = k1 q^-k2")->capture_default_str();
    uni->add_option("--delta", *udelta, "delta")->capture_default_str();
    uni->add_option("--eps", *ueps, "epsilon")->capture_default_str();
    uni->callback([cu, uspec, uN, psi, udelta, ueps, &st] {
        const auto r = pipeline::solve_uniform(cu->params(), read_spec(*uspec), *psi, parse_bigint(*uN), *udelta,
                                               *ueps, cu->budget);
        if (cu->format() == Format::json) {
            emit(st.out, "uniform", io::to_json(r));
        } else if (r.violated) {
            st.out << "alpha is not psi-badly approximable: q = " << to_string(r.violating_q) << '\n';
        } else {
            st.out << "dispersion " << num(to_double(r.dispersion)) << " over " << r.cloud_size << " points"
                   << (r.vacuous ? " (bound vacuous)" : "") << '\n';
        }
    });

    auto cdn = std::make_shared<Common>();
    auto A = std::make_shared<std::string>();
    auto Q = std::make_shared<std::string>();
    auto exponent = std::make_shared<double>(2);
    auto deps = std::make_shared<double>(0.05);
    auto* dens = app.add_subcommand("density", "dispersion of {q A/Q} over Sigma(Q^exponent)");
    add_pair(dens, *cdn);
    add_format(dens, *cdn, false);
    dens->add_option("--A", *A, "numerator")->required();
    dens->add_option("--Q", *Q, "denominator")->required();
    dens->add_option("--exponent", *exponent, "bound exponent")->capture_default_str();
    dens->add_option("--eps", *deps, "epsilon in the reference bound")->capture_default_str();
    dens->callback([cdn, A, Q, exponent, deps, &st] {
        const auto r = pipeline::measure_density(cdn->params(), circle::Angle(parse_bigint(*A), parse_bigint(*Q)),
                                                 *exponent, *deps, cdn->budget);
        if (cdn->format() == Format::json) {
            emit(st.out, "density", io::to_json(r));
        } else {
            st.out << "dispersion " << num(to_double(r.dispersion)) << " over " << r.count << " points"
                   << (r.vacuous ? " (bound vacuous)" : "") << '\n';
        }
    });
}

void setup_verify(CLI::App& app, State& st) {
    auto level = std::make_shared<std::string>("fast");
    auto opts = std::make_shared<verify::Options>();
    auto constants = std::make_shared<std::string>();
    auto only = std::make_shared<std::vector<int>>();
    auto json = std::make_shared<bool>(false);
    auto* v = app.add_subcommand("verify-all", "run the acceptance checks");
    v->add_option("level", *level, "fast or full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();
    v->add_option("--seed", opts->seed, "seed for the random trials")->capture_default_str();
    v->add_option("--constants-out", *constants, "write the observed regression constants here");
    v->add_option("--only", *only, "run only these criteria");
    v->add_flag("--json", *json, "emit JSON");
    v->add_flag("--inject-sign-flip", opts->inject_sign_flip)->group("");
    v->callback([level, opts, constants, only, json, &st] {
        opts->level = *level == "full" ? verify::Level::full : verify::Level::fast;
        verify::Summary s;
        if (only->empty()) {
            s = verify::verify_all(*opts);
        } else {
            for (int id : *only) {
                s.records.push_back(verify::run_criterion(id, *opts));
            }
        }
        if (*json) {
            Json payload = verify::to_json(s);
            payload["level"] = *level;
            payload["seed"] = num(opts->seed);
            emit(st.out, "verify", std::move(payload));
        } else {
            for (const auto& r : s.records) {
                st.out << (r.pass ? "PASS" : "FAIL") << ' ' << r.id << ' ' << r.name << ": " << r.detail << " ["
                       << num(std::round(r.seconds * 100) / 100) << " s]\n";
            }
            st.out << (s.pass() ? "all criteria pass" : "some criteria fail") << '\n';
        }
        if (!constants->empty()) {
            std::ofstream f(*constants, std::ios::binary);
            require(static_cast<bool>(f), ErrorKind::parameter, "cannot write " + *constants);
            f << io::envelope("regression", Json{{"seed", num(opts->seed)}, {"constants", s.constants()}}).dump(2)
              << '\n';
        }
        st.exit_code = s.pass() ? kExitOk : kExitFailed;
    });
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    State st{out, err};
    CLI::App app{"Approximation by a^u b^v: enumeration, nets, exponential sums and solvers", "furst"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "show help for every subcommand");
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads (default FURST_THREADS or 1)");
    app.parse_complete_callback([&] {
        if (threads > 0) {
            set_thread_count(threads);
        }
    });
    setup_sunits(app, st);
    setup_circle(app, st);
    setup_alpha(app, st);
    setup_net(app, st);
    setup_digits(app, st);
    setup_harmonics(app, st);
    setup_pipeline(app, st);
    setup_verify(app, st);

    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << Json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << Json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        return kExitError;
    }
    return st.exit_code;
}

}  // namespace furst::cli

#include "furst/json_io.hpp"

#include <charconv>
#include <cmath>

#include "furst/error.hpp"

namespace furst::io {

std::string num(double x) {
    if (!std::isfinite(x)) {
        return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string num(std::uint64_t x) { return std::to_string(x); }

Json str(const BigInt& x) { return to_string(x); }

Json str(const Rational& x) { return to_string(x); }

Json str(const RationalInterval& x) {
    Json j;
    j["lo"] = to_string(x.lo);
    j["hi"] = to_string(x.hi);
    return j;
}

BigInt get_bigint(const nlohmann::json& j) {
    if (j.is_string()) {
        return parse_bigint(j.get<std::string>());
    }
    if (j.is_number_unsigned()) {
        return from_u64(j.get<std::uint64_t>());
    }
    if (j.is_number_integer()) {
        return BigInt(std::to_string(j.get<long long>()));
    }
    fail(ErrorKind::parameter, "expected an integer or a decimal string in JSON");
}

Rational get_rational(const nlohmann::json& j) {
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    return Rational(get_bigint(j));
}

double get_double(const nlohmann::json& j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    require(j.is_string(), ErrorKind::parameter, "expected a number or a decimal string in JSON");
    const auto text = j.get<std::string>();
    double x = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), x);
    require(res.ec == std::errc() && res.ptr == text.data() + text.size(), ErrorKind::parameter,
            "not a decimal number: '" + text + "'");
    return x;
}

std::uint64_t get_u64(const nlohmann::json& j) {
    const BigInt x = get_bigint(j);
    require(fits_u64(x), ErrorKind::parameter, "value out of range: " + to_string(x));
    return to_u64(x);
}

namespace {

Json params_json(const sunits::SUnitParams& p) {
    Json j;
    j["a"] = num(p.a);
    j["b"] = num(p.b);
    return j;
}

Json u64_array(const std::vector<std::uint64_t>& xs) {
    Json arr = Json::array();
    for (auto x : xs) {
        arr.push_back(num(x));
    }
    return arr;
}

template <class T>
Json opt(const std::optional<T>& x) {
    return x ? Json(str(*x)) : Json(nullptr);
}

}  // namespace

Json to_json(const sunits::SUnit& x) {
    Json j;
    j["u"] = num(std::uint64_t{x.u});
    j["v"] = num(std::uint64_t{x.v});
    j["value"] = str(x.value);
    return j;
}

Json to_json(const sunits::GapReport& r) {
    Json j;
    j["max_gap"] = str(r.max_gap);
    j["argmax_pair"] = Json::array({str(r.argmax_pair.first), str(r.argmax_pair.second)});
    j["normalized_constant"] = num(r.normalized_constant);
    Json gaps = Json::array();
    for (const auto& g : r.gaps) {
        gaps.push_back(Json{{"q", str(g.q)}, {"gap", str(g.gap)}});
    }
    j["gaps"] = std::move(gaps);
    return j;
}

Json to_json(const netgen::NetReport& r, bool emit_points) {
    Json j;
    j["params"] = params_json(r.params);
    j["alpha"] = r.alpha.str();
    j["M"] = str(r.M);
    j["M1"] = str(r.M1);
    j["eta_hi"] = r.eta_hi.str();
    j["eta_lo"] = r.eta_lo.str();
    j["q_hi"] = str(r.q_hi);
    j["q_lo"] = str(r.q_lo);
    j["d"] = str(r.d);
    j["sigma_size"] = num(std::uint64_t{r.sigma_size});
    j["point_count"] = num(std::uint64_t{r.point_count});
    j["k"] = num(std::uint64_t{r.k});
    Json qj = Json::array();
    for (const auto& q : r.q_j) {
        qj.push_back(str(q));
    }
    j["q_j"] = std::move(qj);
    j["D_d"] = str(r.D_d);
    j["D_d_pair"] = Json::array({str(r.D_d_pair.first), str(r.D_d_pair.second)});
    j["delta"] = str(r.delta);
    j["net_size"] = num(std::uint64_t{r.net.size()});
    if (emit_points) {
        Json pts = Json::array();
        for (const auto& p : r.net) {
            pts.push_back(str(p));
        }
        j["net"] = std::move(pts);
    }
    j["measured_dispersion"] = str(r.measured_dispersion);
    j["pigeonhole_ok"] = r.pigeonhole_ok;
    j["window_ok"] = r.window_ok;
    return j;
}

Json to_json(const netgen::DigitSet& ds) {
    Json j;
    j["a"] = num(ds.a);
    j["n"] = num(std::uint64_t{ds.n});
    j["residues"] = u64_array(ds.residues);
    j["source_M1"] = opt(ds.source_M1);
    return j;
}

netgen::DigitSet digit_set_from_json(const nlohmann::json& j) {
    require(j.is_object(), ErrorKind::parameter, "DigitSet JSON must be an object");
    std::vector<std::uint64_t> residues;
    for (const auto& r : j.at("residues")) {
        residues.push_back(get_u64(r));
    }
    const auto n = get_u64(j.at("n"));
    require(n <= 64, ErrorKind::parameter, "DigitSet n too large");
    auto ds = netgen::DigitSet::make(get_u64(j.at("a")), static_cast<unsigned>(n), std::move(residues));
    if (j.contains("source_M1") && !j.at("source_M1").is_null()) {
        ds.source_M1 = get_bigint(j.at("source_M1"));
    }
    return ds;
}

Json to_json(const netgen::Lemma2Record& r) {
    Json j;
    j["X_n"] = num(std::uint64_t{r.X_n});
    j["sqrtN_half"] = num(r.sqrtN_half);
    j["pass"] = r.pass;
    j["advisory"] = true;
    return j;
}

Json to_json(const digits::Stratum& st) {
    Json j;
    j["a"] = num(st.a);
    j["s"] = num(std::uint64_t{st.s});
    j["l"] = num(std::uint64_t{st.l});
    j["lambda"] = num(st.lambda);
    j["X"] = num(std::uint64_t{st.X()});
    j["members"] = u64_array(st.members);
    return j;
}

Json to_json(const digits::SearchResult& r) {
    Json j;
    j["best"] = to_json(r.best);
    j["j"] = num(std::uint64_t{r.j});
    j["J"] = num(std::uint64_t{r.J});
    j["threshold"] = num(r.threshold);
    j["pass"] = r.pass;
    j["advisory"] = true;
    j["grid_points"] = num(std::uint64_t{r.grid_points});
    return j;
}

Json to_json(const digits::YSet& y) {
    Json j;
    j["a"] = num(y.a);
    j["l"] = num(std::uint64_t{y.l});
    j["s"] = num(std::uint64_t{y.s});
    j["lambda"] = num(y.lambda);
    j["gamma"] = y.gamma.str();
    j["Y"] = num(std::uint64_t{y.Y()});
    j["members"] = u64_array(y.members);
    j["source_M2"] = str(y.source_M2);
    return j;
}

Json to_json(const harmonics::SubgroupDescriptor& d) {
    Json j;
    j["a"] = num(d.a);
    j["b"] = num(d.b);
    j["l"] = num(std::uint64_t{d.l});
    j["modulus"] = num(d.modulus);
    j["S"] = num(d.S);
    j["phi"] = num(d.phi);
    j["kappa"] = num(d.kappa);
    j["l1"] = num(std::uint64_t{d.l1});
    j["kappa1"] = num(d.kappa1);
    return j;
}

Json to_json(const harmonics::ExpSumValue& v) {
    Json j;
    j["re"] = num(v.re);
    j["im"] = num(v.im);
    j["abs"] = num(v.abs());
    j["term_count"] = num(v.term_count);
    return j;
}

Json to_json(const harmonics::Lemma5Scan& s) {
    Json j;
    j["vacuous"] = s.vacuous;
    j["l1"] = num(std::uint64_t{s.l1});
    j["scanned"] = num(s.scanned);
    j["violation_count"] = num(std::uint64_t{s.violations.size()});
    Json vs = Json::array();
    for (const auto& v : s.violations) {
        Json e = to_json(v.value);
        e["m"] = num(v.m);
        vs.push_back(std::move(e));
    }
    j["violations"] = std::move(vs);
    j["empirical_threshold"] = num(std::uint64_t{s.empirical_threshold});
    j["empirical_witness"] = num(s.empirical_witness);
    return j;
}

Json to_json(const harmonics::Lemma6Record& r) {
    Json j;
    j["lhs"] = num(r.lhs);
    j["rhs"] = num(r.rhs);
    j["ratio"] = num(r.ratio);
    j["holds"] = r.holds;
    return j;
}

Json to_json(const harmonics::Lemma7Record& r, bool emit_profile) {
    Json j;
    j["mean_square"] = num(r.mean_square);
    j["bound_scale"] = num(r.bound_scale);
    j["ratio"] = num(r.ratio);
    j["best_w"] = num(r.best_w);
    j["best_R"] = num(r.best_R);
    j["holds"] = r.holds;
    if (emit_profile) {
        Json p = Json::array();
        for (double x : r.profile) {
            p.push_back(num(x));
        }
        j["profile"] = std::move(p);
    }
    return j;
}

Json to_json(const harmonics::Lemma8Result& r) {
    Json j;
    j["success"] = r.success;
    j["w"] = num(r.w);
    j["y"] = num(r.y);
    j["x"] = num(r.x);
    j["err"] = str(r.err);
    j["scanned"] = num(r.scanned);
    return j;
}

Json to_json(const alpha::Convergent& c) {
    Json j;
    j["index"] = num(std::uint64_t{c.index});
    j["p"] = str(c.p);
    j["q"] = str(c.q);
    return j;
}

Json to_json(const alpha::DirichletPair& d) {
    Json j;
    j["A"] = str(d.A);
    j["Q"] = str(d.Q);
    j["error"] = str(d.error);
    return j;
}

Json to_json(const alpha::PsiWitness& w) {
    Json j;
    j["violated"] = w.violated;
    j["violating_q"] = w.violated ? Json(str(w.violating_q)) : Json(nullptr);
    j["pair"] = w.pair ? to_json(*w.pair) : Json(nullptr);
    j["Psi_N"] = num(w.Psi_N);
    return j;
}

Json to_json(const alpha::BakerProbe& p) {
    Json j;
    j["bits"] = num(std::uint64_t{p.bits});
    j["c0"] = str(p.c0);
    j["argmin"] = num(std::uint64_t{p.argmin});
    Json rows = Json::array();
    for (const auto& r : p.rows) {
        Json e = to_json(r.convergent);
        e["next_q"] = str(r.next_q);
        e["distance"] = str(r.distance);
        e["scaled"] = str(r.scaled);
        rows.push_back(std::move(e));
    }
    j["rows"] = std::move(rows);
    return j;
}

Json to_json(const pipeline::PipelineConfig& c) {
    Json j;
    j["a"] = num(c.params.a);
    j["b"] = num(c.params.b);
    j["A"] = str(c.A);
    j["Q"] = str(c.Q);
    j["delta"] = num(c.delta);
    j["eps"] = num(c.eps);
    j["C"] = num(c.C);
    Json o = Json::object();
    if (c.overrides.M) o["M"] = str(*c.overrides.M);
    if (c.overrides.n) o["n"] = num(std::uint64_t{*c.overrides.n});
    if (c.overrides.s) o["s"] = num(std::uint64_t{*c.overrides.s});
    if (c.overrides.l) o["l"] = num(std::uint64_t{*c.overrides.l});
    if (c.overrides.H) o["H"] = num(*c.overrides.H);
    j["overrides"] = std::move(o);
    Json t = Json::array();
    for (const auto& z : c.targets) {
        t.push_back(str(z));
    }
    j["targets"] = std::move(t);
    j["budget"] = num(std::uint64_t{c.budget});
    return j;
}

pipeline::PipelineConfig config_from_json(const nlohmann::json& j) {
    require(j.is_object(), ErrorKind::parameter, "config JSON must be an object");
    pipeline::PipelineConfig c;
    if (j.contains("a")) c.params.a = get_u64(j.at("a"));
    if (j.contains("b")) c.params.b = get_u64(j.at("b"));
    if (j.contains("A")) c.A = get_bigint(j.at("A"));
    if (j.contains("Q")) c.Q = get_bigint(j.at("Q"));
    if (j.contains("delta")) c.delta = get_double(j.at("delta"));
    if (j.contains("eps")) c.eps = get_double(j.at("eps"));
    if (j.contains("C")) c.C = get_double(j.at("C"));
    if (j.contains("budget")) c.budget = get_u64(j.at("budget"));
    if (j.contains("overrides")) {
        const auto& o = j.at("overrides");
        auto small = [&](const char* key) -> std::optional<unsigned> {
            if (!o.contains(key)) return std::nullopt;
            const auto v = get_u64(o.at(key));
            require(v < 4096, ErrorKind::parameter, std::string("override out of range: ") + key);
            return static_cast<unsigned>(v);
        };
        if (o.contains("M")) c.overrides.M = get_bigint(o.at("M"));
        c.overrides.n = small("n");
        c.overrides.s = small("s");
        c.overrides.l = small("l");
        if (o.contains("H")) c.overrides.H = get_double(o.at("H"));
    }
    if (j.contains("targets")) {
        for (const auto& z : j.at("targets")) {
            c.targets.push_back(get_rational(z));
        }
    }
    return c;
}

Json to_json(const pipeline::PipelineReport& r, bool emit_points) {
    Json j;
    j["config"] = to_json(r.config);
    j["M"] = str(r.M);
    j["M1"] = str(r.M1);
    j["net"] = to_json(r.net, emit_points);
    j["n"] = num(std::uint64_t{r.n});
    j["N"] = str(r.N);
    j["n_target"] = num(r.n_target);
    j["X_n"] = num(std::uint64_t{r.X_n});
    j["lemma2"] = to_json(r.lemma2);
    j["l"] = num(std::uint64_t{r.l});
    j["l_raw"] = num(r.l_raw);
    j["l_clamped"] = r.l_clamped;
    j["search"] = to_json(r.search);
    j["M2"] = str(r.M2);
    j["yset"] = to_json(r.yset);
    Json w = Json::object();
    for (const auto& [x, q] : r.witnesses) {
        w[num(x)] = str(q);
    }
    j["witnesses"] = std::move(w);
    j["H"] = num(r.H);
    j["subgroup"] = to_json(r.subgroup);
    Json b;
    b["lhs"] = opt(r.budget.lhs);
    b["rhs"] = str(r.budget.rhs);
    b["pass"] = r.budget.pass;
    b["b_power_ok"] = r.budget.b_power_ok;
    j["budget"] = std::move(b);
    Json ts = Json::array();
    for (const auto& t : r.targets) {
        Json e;
        e["z"] = str(t.z);
        e["lemma8"] = to_json(t.lemma8);
        e["q_x"] = str(t.q_x);
        e["u"] = num(std::uint64_t{t.u});
        e["v"] = num(std::uint64_t{t.v});
        e["q_star"] = str(t.q_star);
        e["error"] = str(t.error);
        e["exact_bound"] = str(t.exact_bound);
        e["reference_bound"] = num(t.reference_bound);
        e["reference_bound_holds"] = t.reference_bound_holds;
        e["within_budget"] = t.within_budget;
        ts.push_back(std::move(e));
    }
    j["targets"] = std::move(ts);
    return j;
}

Json to_json(const pipeline::SolveResult& r) {
    Json j;
    j["mode"] = r.mode == pipeline::SolveMode::brute ? "brute" : "pipeline";
    j["q"] = to_json(r.q);
    j["error"] = str(r.error);
    j["fallback"] = r.fallback;
    j["fallback_reason"] = r.fallback_reason;
    j["anchor"] = r.anchor ? to_json(*r.anchor) : Json(nullptr);
    j["brute_error"] = r.brute_error ? str(*r.brute_error) : Json(nullptr);
    j["report"] = r.report ? to_json(*r.report, false) : Json(nullptr);
    return j;
}

Json to_json(const pipeline::UniformReport& r) {
    Json j;
    j["violated"] = r.violated;
    j["violating_q"] = r.violated ? Json(str(r.violating_q)) : Json(nullptr);
    j["Psi_N"] = num(r.Psi_N);
    j["anchor"] = r.anchor ? to_json(*r.anchor) : Json(nullptr);
    j["Psi_le_Q"] = r.Psi_le_Q;
    j["dispersion"] = str(r.dispersion);
    j["cloud_size"] = num(std::uint64_t{r.cloud_size});
    j["reference_bound"] = r.reference_bound ? Json(num(*r.reference_bound)) : Json(nullptr);
    j["vacuous"] = r.vacuous;
    j["pipeline_error"] = r.pipeline_error ? Json(*r.pipeline_error) : Json(nullptr);
    j["report"] = r.report ? to_json(*r.report, false) : Json(nullptr);
    return j;
}

Json to_json(const pipeline::DensityReport& r) {
    Json j;
    j["Q"] = str(r.Q);
    j["bound"] = str(r.bound);
    j["count"] = num(std::uint64_t{r.count});
    j["dispersion"] = str(r.dispersion);
    j["dispersion_approx"] = num(to_double(r.dispersion));
    j["reference_bound"] = r.reference_bound ? Json(num(*r.reference_bound)) : Json(nullptr);
    j["vacuous"] = r.vacuous;
    return j;
}

Json envelope(const std::string& kind, Json payload) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = kind;
    for (auto& [key, value] : payload.items()) {
        j[key] = std::move(value);
    }
    return j;
}

}  // namespace furst::io

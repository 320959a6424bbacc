#include "furst/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "furst/error.hpp"

namespace furst::alpha {

const BigInt& ContinuedFraction::quotient(std::size_t i) const {
    if (i < quotients.size()) {
        return quotients[i];
    }
    require(period_from.has_value(), ErrorKind::domain, "partial quotient index past a finite expansion");
    const std::size_t start = *period_from;
    const std::size_t len = quotients.size() - start;
    return quotients[start + (i - start) % len];
}

RealSpec RealSpec::rational(const Rational& x) {
    RealSpec out;
    Rational v = x;
    v.canonicalize();
    out.value_ = v;
    return out;
}

RealSpec RealSpec::cf(std::vector<BigInt> quotients, std::optional<std::size_t> period_from) {
    require(!quotients.empty(), ErrorKind::parameter, "continued fraction needs at least one quotient");
    for (std::size_t i = 1; i < quotients.size(); ++i) {
        require(quotients[i] >= 1, ErrorKind::parameter, "partial quotients after the first must be >= 1");
    }
    if (period_from) {
        require(*period_from >= 1 && *period_from < quotients.size(), ErrorKind::parameter,
                "period_from must index a quotient after the first");
    }
    RealSpec out;
    out.value_ = ContinuedFraction{std::move(quotients), period_from};
    return out;
}

RealSpec RealSpec::decimal(std::string text, unsigned long bits) {
    require(bits >= 64, ErrorKind::parameter, "decimal precision must be at least 64 bits");
    BigFloat probe(bits);
    require(!text.empty() && mpfr_set_str(probe.get(), text.c_str(), 10, MPFR_RNDN) == 0,
            ErrorKind::parameter, "not a decimal number: '" + text + "'");
    RealSpec out;
    out.value_ = DecimalText{std::move(text), bits};
    return out;
}

namespace {

BigInt json_bigint(const nlohmann::json& j) {
    if (j.is_string()) {
        return parse_bigint(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return BigInt(std::to_string(j.get<long long>()));
    }
    fail(ErrorKind::parameter, "expected an integer or a decimal string in JSON");
}

}  // namespace

RealSpec RealSpec::from_json(const nlohmann::json& j) {
    require(j.is_object(), ErrorKind::parameter, "RealSpec JSON must be an object");
    if (j.contains("rational")) {
        return rational(parse_rational(j.at("rational").get<std::string>()));
    }
    if (j.contains("cf")) {
        std::vector<BigInt> quotients;
        for (const auto& q : j.at("cf")) {
            quotients.push_back(json_bigint(q));
        }
        std::optional<std::size_t> period;
        if (j.contains("period_from") && !j.at("period_from").is_null()) {
            period = j.at("period_from").get<std::size_t>();
        }
        return cf(std::move(quotients), period);
    }
    if (j.contains("decimal")) {
        const unsigned long bits = j.value("bits", 256ul);
        return decimal(j.at("decimal").get<std::string>(), bits);
    }
    fail(ErrorKind::parameter, "RealSpec JSON needs one of: rational, cf, decimal");
}

nlohmann::json RealSpec::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    if (const auto* r = std::get_if<Rational>(&value_)) {
        j["rational"] = to_string(*r);
    } else if (const auto* c = std::get_if<ContinuedFraction>(&value_)) {
        nlohmann::json qs = nlohmann::json::array();
        for (const auto& q : c->quotients) {
            qs.push_back(to_string(q));
        }
        j["cf"] = qs;
        if (c->period_from) {
            j["period_from"] = *c->period_from;
        }
    } else {
        const auto& d = std::get<DecimalText>(value_);
        j["decimal"] = d.text;
        j["bits"] = d.bits;
    }
    return j;
}

std::optional<Rational> RealSpec::exact() const {
    if (const auto* r = std::get_if<Rational>(&value_)) {
        return *r;
    }
    if (const auto* c = std::get_if<ContinuedFraction>(&value_); c && c->finite()) {
        Rational x(c->quotients.back());
        for (std::size_t i = c->quotients.size() - 1; i-- > 0;) {
            x = Rational(c->quotients[i]) + 1 / x;
        }
        x.canonicalize();
        return x;
    }
    return std::nullopt;
}

RationalInterval RealSpec::enclose(unsigned long bits) const {
    if (auto x = exact()) {
        return RationalInterval::point(*x);
    }
    if (const auto* d = std::get_if<DecimalText>(&value_)) {
        BigFloat lo(d->bits);
        BigFloat hi(d->bits);
        mpfr_set_str(lo.get(), d->text.c_str(), 10, MPFR_RNDD);
        mpfr_set_str(hi.get(), d->text.c_str(), 10, MPFR_RNDU);
        return {to_rational(lo.get()), to_rational(hi.get())};
    }
    // Periodic: x lies strictly between consecutive convergents, and
    // |c_k - c_{k+1}| = 1/(q_k q_{k+1}).
    const auto& c = std::get<ContinuedFraction>(value_);
    const BigInt target = BigInt(1) << static_cast<mp_bitcnt_t>(bits);
    BigInt p_prev = 1, q_prev = 0;
    BigInt p = c.quotient(0), q = 1;
    for (std::size_t i = 1;; ++i) {
        const BigInt& a = c.quotient(i);
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        if (q * q_next > target) {
            Rational x = make_rational(p, q);
            Rational y = make_rational(p_next, q_next);
            return x < y ? RationalInterval(x, y) : RationalInterval(y, x);
        }
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
    }
}

std::vector<BigInt> cf_expand(const Rational& x) {
    std::vector<BigInt> out;
    BigInt num = x.get_num();
    BigInt den = x.get_den();
    for (;;) {
        BigInt a;
        BigInt r;
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        out.push_back(a);
        if (r == 0) {
            break;
        }
        num = std::move(den);
        den = std::move(r);
    }
    return out;
}

std::vector<Convergent> convergents_of(const std::vector<BigInt>& quotients) {
    std::vector<Convergent> out;
    out.reserve(quotients.size());
    BigInt p_prev = 1, q_prev = 0;
    BigInt p_prev2 = 0, q_prev2 = 1;
    for (std::size_t i = 0; i < quotients.size(); ++i) {
        BigInt p = quotients[i] * p_prev + p_prev2;
        BigInt q = quotients[i] * q_prev + q_prev2;
        out.push_back({p, q, i});
        p_prev2 = std::move(p_prev);
        q_prev2 = std::move(q_prev);
        p_prev = std::move(p);
        q_prev = std::move(q);
    }
    return out;
}

namespace {

unsigned long bit_length(const BigInt& x) {
    return static_cast<unsigned long>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

// Truncates a quotient list right after the first convergent with q > q_limit.
CfPrefix truncate_prefix(const std::vector<BigInt>& quotients, const BigInt& q_limit, bool ends_exactly) {
    CfPrefix out;
    BigInt q_prev = 0, q = 1;
    for (std::size_t i = 0; i < quotients.size(); ++i) {
        out.quotients.push_back(quotients[i]);
        if (i > 0) {
            BigInt next = quotients[i] * q + q_prev;
            q_prev = std::move(q);
            q = std::move(next);
        }
        if (q > q_limit) {
            return out;
        }
    }
    out.terminates = ends_exactly;
    return out;
}

unsigned long required_bits_for(const BigInt& q_limit, unsigned long bits_used) {
    const unsigned long need = 2 * bit_length(q_limit) + 32;
    return need > bits_used ? need : 2 * bits_used;
}

// Starting precision for enclosures that must resolve quantities of size 1/N^2.
unsigned long start_bits(const BigInt& scale) { return 2 * bit_length(scale) + 64; }

bool is_decimal(const RealSpec& x) { return std::holds_alternative<DecimalText>(x.variant()); }

// Calls attempt(enclosure, bits) with growing precision until it returns a
// value. Exact and decimal inputs get a single attempt.
template <class Attempt>
auto with_escalation(const RealSpec& x, unsigned long bits, const char* what, Attempt&& attempt) {
    const bool refinable = !x.exact() && !is_decimal(x);
    const unsigned long limit = refinable ? (1ul << 15) : bits;
    for (;; bits *= 2) {
        const RationalInterval enc = x.enclose(bits);
        if (auto result = attempt(enc, bits)) {
            return *result;
        }
        if (bits >= limit) {
            unsigned long have = bits;
            if (const auto* d = std::get_if<DecimalText>(&x.variant())) {
                have = d->bits;
            }
            throw PrecisionError(std::string("enclosure too wide to decide ") + what, 2 * have);
        }
    }
}

}  // namespace

CfPrefix certified_prefix(const RationalInterval& x, const BigInt& q_limit, unsigned long bits_used) {
    if (x.exact()) {
        return truncate_prefix(cf_expand(x.lo), q_limit, true);
    }
    const auto lo = cf_expand(x.lo);
    const auto hi = cf_expand(x.hi);
    std::vector<BigInt> common;
    for (std::size_t i = 0; i < lo.size() && i < hi.size() && lo[i] == hi[i]; ++i) {
        common.push_back(lo[i]);
    }
    CfPrefix out = truncate_prefix(common, q_limit, false);
    if (out.quotients.size() == common.size()) {
        // ran out of certified quotients before passing q_limit
        const auto convs = convergents_of(common);
        if (convs.empty() || convs.back().q <= q_limit) {
            throw PrecisionError("cannot certify the next partial quotient",
                                 required_bits_for(q_limit, bits_used));
        }
    }
    return out;
}

CfPrefix certified_prefix(const RealSpec& x, const BigInt& q_limit) {
    if (auto v = x.exact()) {
        return truncate_prefix(cf_expand(*v), q_limit, true);
    }
    if (const auto* d = std::get_if<DecimalText>(&x.variant())) {
        return certified_prefix(x.enclose(d->bits), q_limit, d->bits);
    }
    const auto& c = std::get<ContinuedFraction>(x.variant());
    CfPrefix out;
    BigInt q_prev = 0, q = 1;
    for (std::size_t i = 0;; ++i) {
        out.quotients.push_back(c.quotient(i));
        if (i > 0) {
            BigInt next = c.quotient(i) * q + q_prev;
            q_prev = std::move(q);
            q = std::move(next);
        }
        if (q > q_limit) {
            return out;
        }
    }
}

std::vector<Convergent> convergents(const RealSpec& x, const BigInt& q_limit) {
    require(q_limit >= 1, ErrorKind::domain, "q_limit must be >= 1");
    const CfPrefix prefix = certified_prefix(x, q_limit);
    std::vector<Convergent> out;
    for (auto& c : convergents_of(prefix.quotients)) {
        if (c.q <= q_limit) {
            out.push_back(std::move(c));
        }
    }
    for (const auto& c : out) {
        const Rational approx = make_rational(c.p, c.q);
        const Rational bound = Rational(1) / Rational(c.q * c.q);
        with_escalation(x, start_bits(q_limit), "|x - p/q| < 1/q^2",
                        [&](const RationalInterval& enc, unsigned long) -> std::optional<bool> {
                            const RationalInterval dist = abs(enc - RationalInterval::point(approx));
                            if (dist.hi < bound || (enc.exact() && dist.hi <= bound)) {
                                return true;
                            }
                            if (dist.lo >= bound) {
                                fail(ErrorKind::consistency,
                                     "convergent " + to_string(approx) + " violates |x - p/q| < 1/q^2");
                            }
                            return std::nullopt;
                        });
    }
    return out;
}

DirichletPair dirichlet_approx(const RealSpec& x, const BigInt& N) {
    require(N >= 1, ErrorKind::domain, "Dirichlet bound N must be >= 1");
    const auto convs = convergents(x, N);
    const Convergent& last = convs.back();
    const Rational approx = make_rational(last.p, last.q);
    const Rational bound = Rational(1) / Rational(last.q * N);
    RationalInterval error = with_escalation(
        x, start_bits(N), "the Dirichlet bound",
        [&](const RationalInterval& enc, unsigned long) -> std::optional<RationalInterval> {
            RationalInterval dist = abs(enc - RationalInterval::point(approx));
            if (dist.hi <= bound) {
                return dist;
            }
            if (dist.lo > bound) {
                fail(ErrorKind::consistency, "Dirichlet guarantee fails for " + to_string(approx));
            }
            return std::nullopt;
        });
    return {last.p, last.q, std::move(error)};
}

void PsiSpec::validate() const {
    require(k1 > 0 && std::isfinite(k1), ErrorKind::parameter, "psi needs k1 > 0");
    require(k2 >= 1 && std::isfinite(k2), ErrorKind::parameter, "psi needs k2 >= 1 (psi(t) = O(1/t))");
}

RationalInterval PsiSpec::psi(const BigInt& q, unsigned long bits) const {
    return Rational(k1) * pow_enclosure(q, -k2, bits);
}

double PsiSpec::Psi(double N) const { return std::pow(k1 * N, 1.0 / k2); }

PsiWitness psi_bad_witness(const RealSpec& x, const PsiSpec& psi, const BigInt& N) {
    psi.validate();
    require(N >= 2, ErrorKind::domain, "psi_bad_witness requires N >= 2");
    PsiWitness out;
    out.Psi_N = psi.Psi(N.get_d());
    for (const auto& c : convergents(x, N)) {
        const bool ok = with_escalation(
            x, start_bits(N), "||q x|| against psi(q)",
            [&](const RationalInterval& enc, unsigned long bits) -> std::optional<bool> {
                const RationalInterval norm = nearest_int_norm(Rational(c.q) * enc);
                const RationalInterval bound = psi.psi(c.q, bits);
                if (norm.lo >= bound.hi) {
                    return true;
                }
                if (norm.hi < bound.lo) {
                    return false;
                }
                return std::nullopt;
            });
        if (!ok) {
            out.violated = true;
            out.violating_q = c.q;
            return out;
        }
    }
    out.pair = dirichlet_approx(x, N);
    return out;
}

BakerProbe baker_probe(const sunits::SUnitParams& params, double beta, const BigInt& q_limit,
                       unsigned long bits) {
    params.validate();
    require(beta > 0 && std::isfinite(beta), ErrorKind::domain, "baker_probe needs beta > 0");
    require(q_limit >= 1, ErrorKind::domain, "q_limit must be >= 1");
    require(bits >= 64, ErrorKind::parameter, "baker_probe precision must be at least 64 bits");
    const RationalInterval x = log_ratio_enclosure(from_u64(params.a), from_u64(params.b), bits);
    const CfPrefix prefix = certified_prefix(x, q_limit, bits);
    const auto convs = convergents_of(prefix.quotients);

    BakerProbe out;
    out.bits = bits;
    for (std::size_t i = 0; i + 1 < convs.size(); ++i) {
        const auto& c = convs[i];
        const BigInt& next_q = convs[i + 1].q;
        RationalInterval dist = abs(x - RationalInterval::point(make_rational(c.p, c.q)));
        const Rational lower = Rational(1) / Rational(c.q * (next_q + c.q));
        const Rational upper = Rational(1) / Rational(c.q * next_q);
        if (!(lower < dist.lo && dist.hi < upper)) {
            if (dist.hi <= lower || dist.lo >= upper) {
                fail(ErrorKind::consistency, "continued-fraction bounds violated at " +
                                                 to_string(make_rational(c.p, c.q)));
            }
            throw PrecisionError("continued-fraction bounds undecided", 2 * bits);
        }
        RationalInterval scaled = pow_enclosure(c.q, beta, bits) * dist;
        out.rows.push_back({c, next_q, std::move(dist), std::move(scaled)});
    }
    require(!out.rows.empty(), ErrorKind::structural, "no convergents below q_limit");
    out.argmin = 0;
    Rational lo = out.rows[0].scaled.lo;
    Rational hi = out.rows[0].scaled.hi;
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        if (out.rows[i].scaled.lo < out.rows[out.argmin].scaled.lo) {
            out.argmin = i;
        }
        lo = std::min(lo, out.rows[i].scaled.lo);
        hi = std::min(hi, out.rows[i].scaled.hi);
    }
    out.c0 = {lo, hi};
    if (sgn(out.c0.lo) <= 0) {
        throw PrecisionError("c0 not certified positive", 2 * bits);
    }
    return out;
}

}  // namespace furst::alpha

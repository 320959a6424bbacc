#include "furst/digits.hpp"

#include <algorithm>
#include <cmath>

#include "furst/error.hpp"

namespace furst::digits {

namespace {

std::uint64_t power(std::uint64_t a, unsigned k) {
    const std::uint64_t p = checked_pow_u64(a, k);
    require(p != 0, ErrorKind::resource, "a^k does not fit in 63 bits");
    return p;
}

}  // namespace

Projection project(const DigitSet& ds, unsigned s) {
    require(s <= ds.n, ErrorKind::domain, "projection length s exceeds n");
    const std::uint64_t mod = power(ds.a, s);
    std::vector<std::uint64_t> residues;
    residues.reserve(ds.size());
    for (auto x : ds.residues) {
        residues.push_back(x % mod);
    }
    Projection out{DigitSet::make(ds.a, s, std::move(residues)), std::nullopt};
    if (ds.source_M1) {
        out.M2 = *ds.source_M1 * pow(ds.a, ds.n - s);
        out.ds.source_M1 = out.M2;
    }
    return out;
}

std::uint64_t ta_shift(std::uint64_t x, std::uint64_t a, unsigned k) {
    require(a >= 2, ErrorKind::parameter, "shift base must be >= 2");
    for (unsigned i = 0; i < k && x != 0; ++i) {
        x /= a;
    }
    return x;
}

std::map<std::uint64_t, Stratum> stratify(const DigitSet& ds, unsigned s, unsigned l) {
    require(l <= s && s <= ds.n, ErrorKind::domain, "stratify needs 0 <= l <= s <= n");
    const Projection proj = project(ds, s);
    const std::uint64_t low = power(ds.a, s - l);
    std::map<std::uint64_t, Stratum> out;
    for (auto x : proj.ds.residues) {
        const std::uint64_t lambda = x % low;
        auto [it, fresh] = out.try_emplace(lambda);
        if (fresh) {
            it->second = Stratum{ds.a, s, l, lambda, {}};
        }
        it->second.members.push_back(x);  // residues are ascending already
    }
    return out;
}

SearchResult combinatorial_search(const DigitSet& ds, unsigned l, double eps) {
    require(eps > 0 && eps < 0.25, ErrorKind::parameter, "eps must lie in (0, 1/4)");
    require(l >= 1, ErrorKind::parameter, "l must be >= 1");
    require(l <= ds.n, ErrorKind::domain, "l exceeds the digit length n");
    SearchResult out;
    out.J = static_cast<unsigned>(std::ceil((1 - eps) * ds.n / l));
    out.threshold = std::pow(static_cast<double>(ds.a), (0.5 - 2 * eps) * l);
    bool have = false;
    for (unsigned j = 0; j <= out.J && j * l <= ds.n; ++j) {
        const unsigned s = ds.n - j * l;
        if (s < eps * ds.n || s < l) {
            break;
        }
        ++out.grid_points;
        const auto strata = stratify(ds, s, l);
        for (const auto& entry : strata) {
            if (!have || entry.second.X() > out.best.X()) {
                out.best = entry.second;
                out.j = j;
                have = true;
            }
        }
    }
    require(have, ErrorKind::structural, "combinatorial search found no stratum (empty digit set?)");
    out.pass = static_cast<double>(out.best.X()) >= out.threshold;
    return out;
}

std::uint64_t YSet::x_of(std::uint64_t y) const { return lambda + y * power(a, s - l); }

YSet extract_y(const Stratum& st, const BigInt& m2) {
    require(st.l <= st.s, ErrorKind::domain, "stratum with l > s");
    const std::uint64_t low = power(st.a, st.s - st.l);
    const std::uint64_t top = power(st.a, st.l);
    require(st.lambda < low, ErrorKind::domain, "lambda outside [0, a^(s-l))");
    YSet y;
    y.a = st.a;
    y.l = st.l;
    y.s = st.s;
    y.lambda = st.lambda;
    y.gamma = circle::Angle(from_u64(st.lambda), pow(st.a, st.s));
    y.source_M2 = m2;
    y.members.reserve(st.X());
    for (auto x : st.members) {
        require(x % low == st.lambda, ErrorKind::consistency,
                "stratum member " + std::to_string(x) + " is not congruent to lambda");
        const std::uint64_t v = (x - st.lambda) / low;
        require(v < top, ErrorKind::consistency, "stratum member outside [0, a^s)");
        y.members.push_back(v);
    }
    std::sort(y.members.begin(), y.members.end());
    require(std::adjacent_find(y.members.begin(), y.members.end()) == y.members.end(), ErrorKind::consistency,
            "duplicate stratum members");
    return y;
}

YSet make_yset(std::uint64_t a, unsigned l, std::vector<std::uint64_t> members, const circle::Angle& gamma) {
    require(a >= 2, ErrorKind::parameter, "base must be >= 2");
    const std::uint64_t top = power(a, l);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (auto y : members) {
        require(y < top, ErrorKind::domain, "member outside [0, a^l)");
    }
    YSet out;
    out.a = a;
    out.l = l;
    out.s = l;
    out.gamma = gamma;
    out.members = std::move(members);
    return out;
}

std::map<std::uint64_t, BigInt> witness_table(const sunits::SUnitParams& params, const circle::Angle& alpha,
                                              const BigInt& M2, unsigned s, std::size_t budget) {
    const BigInt scale = pow(params.a, s);
    const BigInt Q = alpha.den();
    std::map<std::uint64_t, BigInt> out;
    for (const auto& e : sunits::enumerate_sigma(params, M2, budget)) {
        BigInt r = e.value * alpha.num();
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), Q.get_mpz_t());
        r *= scale;
        mpz_fdiv_q(r.get_mpz_t(), r.get_mpz_t(), Q.get_mpz_t());
        out.try_emplace(to_u64(r), e.value);  // ascending enumeration keeps the smallest q
    }
    return out;
}

}  // namespace furst::digits

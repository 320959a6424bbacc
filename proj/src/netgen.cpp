#include "furst/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "furst/error.hpp"

namespace furst::netgen {

using circle::Angle;
using circle::PointSet;

NetReport build_net(const sunits::SUnitParams& params, const Angle& alpha, const BigInt& M,
                    const NetOptions& options) {
    params.validate();
    require(M >= 1, ErrorKind::domain, "M must be >= 1");
    const BigInt Q = alpha.den();
    require(options.allow_collisions || M < Q, ErrorKind::precondition,
            "build_net requires M < den(alpha) (M=" + to_string(M) + ", den=" + to_string(Q) + ")");

    NetReport r;
    r.params = params;
    r.alpha = alpha;
    r.M = M;
    r.M1 = M * Q;

    const auto sigma = sunits::enumerate_sigma(params, M, options.budget);
    r.sigma_size = sigma.size();
    require(sigma.size() >= 2, ErrorKind::structural, "Sigma(M) has fewer than two elements");

    // first (smallest) q for each fractional part
    std::map<Rational, BigInt> first_q;
    for (const auto& e : sigma) {
        first_q.emplace(circle::frac_mul(e.value, alpha).value(), e.value);
    }
    std::vector<Rational> values;
    values.reserve(first_q.size());
    for (const auto& [eta, q] : first_q) {
        values.push_back(eta);
    }
    const PointSet points = PointSet::from_values(std::move(values));
    r.point_count = points.size();
    require(points.size() >= 2, ErrorKind::structural,
            "Sigma_alpha(M) has a single point; no positive gap exists");

    const auto pair = circle::min_positive_gap(points);
    r.eta_hi = Angle(pair.eta_hi);
    r.eta_lo = Angle(pair.eta_lo);
    r.q_hi = first_q.at(pair.eta_hi);
    r.q_lo = first_q.at(pair.eta_lo);
    r.d = 1 / pair.gap;

    r.pigeonhole_ok = pair.gap * static_cast<unsigned long>(r.point_count) <= 1;
    r.window_ok = Rational(static_cast<unsigned long>(r.point_count)) <= r.d && r.d <= Rational(Q);
    require(pair.gap * Q >= 1, ErrorKind::consistency, "gap below 1/den(alpha)");

    const BigInt d_floor = floor(r.d);
    for (auto& e : sunits::enumerate_sigma(params, d_floor, options.budget)) {
        r.q_j.push_back(std::move(e.value));
    }
    r.k = r.q_j.size();
    const BigInt next = sunits::successor(params, d_floor).value;
    r.D_d = 0;
    for (std::size_t i = 0; i < r.k; ++i) {
        const BigInt& upper = i + 1 < r.k ? r.q_j[i + 1] : next;
        BigInt gap = upper - r.q_j[i];
        if (gap > r.D_d) {
            r.D_d = std::move(gap);
            r.D_d_pair = {r.q_j[i], upper};
        }
    }
    r.delta = Rational(r.D_d) / r.d;
    r.delta.canonicalize();

    std::vector<Rational> net;
    net.reserve(2 * r.k);
    for (const auto& q : r.q_j) {
        Rational eta = Rational(q) * pair.gap;
        eta.canonicalize();
        net.push_back(1 - eta);
        net.push_back(std::move(eta));
    }
    r.net = PointSet::from_values(std::move(net));
    r.measured_dispersion = circle::dispersion(r.net, circle::Metric::interval);
    require(r.measured_dispersion <= r.delta, ErrorKind::consistency,
            "net dispersion " + to_string(r.measured_dispersion) + " exceeds delta " + to_string(r.delta));
    return r;
}

unsigned choose_n(const Rational& delta, std::uint64_t a) {
    require(sgn(delta) > 0, ErrorKind::domain, "choose_n requires delta > 0");
    require(delta <= 1, ErrorKind::domain, "choose_n requires delta <= 1");
    require(a >= 2, ErrorKind::parameter, "base must be >= 2");
    const BigInt limit = floor(1 / delta);
    unsigned n = 0;
    BigInt power = from_u64(a);
    while (power <= limit) {
        ++n;
        power *= from_u64(a);
    }
    return n;
}

DigitSet DigitSet::make(std::uint64_t a, unsigned n, std::vector<std::uint64_t> residues) {
    require(a >= 2, ErrorKind::parameter, "digit base must be >= 2");
    DigitSet ds;
    ds.a = a;
    ds.n = n;
    const std::uint64_t mod = ds.modulus();
    for (auto x : residues) {
        require(x < mod, ErrorKind::domain, "residue " + std::to_string(x) + " outside [0, a^n)");
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    ds.residues = std::move(residues);
    return ds;
}

std::uint64_t DigitSet::modulus() const {
    const std::uint64_t mod = checked_pow_u64(a, n);
    require(mod != 0, ErrorKind::resource, "a^n does not fit in 63 bits");
    return mod;
}

DigitSet digit_set(const sunits::SUnitParams& params, const Angle& alpha, const BigInt& M1, unsigned n,
                   std::size_t budget) {
    params.validate();
    const std::uint64_t N = checked_pow_u64(params.a, n);
    require(N != 0, ErrorKind::resource, "a^n does not fit in 63 bits");
    const BigInt Q = alpha.den();
    const BigInt A = alpha.num();
    std::vector<std::uint64_t> residues;
    for (const auto& e : sunits::enumerate_sigma(params, M1, budget)) {
        BigInt r = e.value * A;
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), Q.get_mpz_t());
        BigInt x = r * from_u64(N);
        mpz_fdiv_q(x.get_mpz_t(), x.get_mpz_t(), Q.get_mpz_t());
        residues.push_back(to_u64(x));
    }
    DigitSet ds = DigitSet::make(params.a, n, std::move(residues));
    ds.source_M1 = M1;
    return ds;
}

Lemma2Record verify_lemma2(const NetReport& report, const DigitSet& ds) {
    require(ds.a == report.params.a, ErrorKind::consistency, "digit set base differs from the net's a");
    require(ds.n == choose_n(report.delta, report.params.a), ErrorKind::consistency,
            "digit length differs from choose_n(delta, a)");
    require(!ds.source_M1 || *ds.source_M1 == report.M1, ErrorKind::consistency,
            "digit set was not built from Sigma_alpha(M * den(alpha))");
    Lemma2Record rec;
    rec.X_n = ds.size();
    const BigInt N = pow(ds.a, ds.n);
    rec.sqrtN_half = std::sqrt(N.get_d()) / 2;
    const BigInt X(from_u64(rec.X_n));
    rec.pass = 4 * X * X >= N;
    return rec;
}

}  // namespace furst::netgen

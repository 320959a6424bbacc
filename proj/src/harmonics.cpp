#include "furst/harmonics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include "furst/error.hpp"
#include "furst/interval.hpp"
#include "furst/parallel.hpp"

namespace furst::harmonics {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTableLimit = u64{1} << 24;
constexpr u64 kMaterializeLimit = u64{1} << 26;

u64 mulmod(u64 x, u64 y, u64 m) { return static_cast<u64>(static_cast<u128>(x) * y % m); }

u64 powmod(u64 base, u64 e, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) {
            result = mulmod(result, base, m);
        }
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

std::vector<u64> prime_factors(u64 x) {
    std::vector<u64> out;
    for (u64 p = 2; p * p <= x; ++p) {
        if (x % p == 0) {
            out.push_back(p);
            while (x % p == 0) {
                x /= p;
            }
        }
    }
    if (x > 1) {
        out.push_back(x);
    }
    return out;
}

u64 checked_pow(u64 a, unsigned l) {
    const u64 p = checked_pow_u64(a, l);
    require(p != 0, ErrorKind::resource, "a^l does not fit in 63 bits");
    return p;
}

unsigned valuation(u64 m, u64 a) {
    unsigned v = 0;
    while (m != 0 && m % a == 0) {
        m /= a;
        ++v;
    }
    return v;
}

u64 reduce(const BigInt& m, u64 modulus) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), m.get_mpz_t(), from_u64(modulus).get_mpz_t());
    return to_u64(r);
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0;
    double carry_ = 0;
};

std::complex<double> unit(u64 r, u64 N) {
    const long double angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(r) / N;
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

class RootTable {
public:
    explicit RootTable(u64 N) : N_(N), table_(N) {
        for (u64 r = 0; r < N; ++r) {
            table_[r] = unit(r, N);
        }
    }
    const std::complex<double>& operator[](u64 r) const { return table_[r]; }
    u64 size() const { return N_; }

private:
    u64 N_;
    std::vector<std::complex<double>> table_;
};

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

std::uint64_t mult_order(std::uint64_t b, std::uint64_t a, unsigned l) {
    require(a >= 2 && b >= 1, ErrorKind::domain, "mult_order needs a >= 2, b >= 1");
    require(l >= 1, ErrorKind::domain, "mult_order needs l >= 1");
    require(std::gcd(a, b) == 1, ErrorKind::domain, "b is not a unit mod a^l (gcd(a, b) != 1)");
    const u64 N = checked_pow(a, l);

    // Carmichael exponent of a^l and the primes that can divide it
    u64 lambda = 1;
    std::vector<u64> primes;
    for (u64 p : prime_factors(a)) {
        u64 e = 0;
        for (u64 t = a; t % p == 0; t /= p) {
            ++e;
        }
        const u64 k = e * l;
        u64 part;
        if (p == 2) {
            part = k == 1 ? 1 : k == 2 ? 2 : u64{1} << (k - 2);
        } else {
            part = (p - 1) * checked_pow(p, static_cast<unsigned>(k - 1));
        }
        lambda = std::lcm(lambda, part);
        primes.push_back(p);
        for (u64 r : prime_factors(p - 1)) {
            primes.push_back(r);
        }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    u64 order = lambda;
    for (u64 r : primes) {
        while (order % r == 0 && powmod(b, order / r, N) == 1 % N) {
            order /= r;
        }
    }
    require(powmod(b, order, N) == 1 % N, ErrorKind::consistency, "order computation failed");
    return order;
}

std::uint64_t SubgroupDescriptor::element(std::uint64_t w) const { return powmod(b, w, modulus); }

std::vector<std::uint64_t> SubgroupDescriptor::elements() const {
    require(S <= kMaterializeLimit, ErrorKind::resource, "subgroup too large to list");
    std::vector<u64> out(S);
    u64 x = 1 % modulus;
    for (u64 w = 0; w < S; ++w) {
        out[w] = x;
        x = mulmod(x, b % modulus, modulus);
    }
    return out;
}

SubgroupDescriptor subgroup(const sunits::SUnitParams& params, unsigned l) {
    params.validate();
    require(l >= 1, ErrorKind::domain, "subgroup needs l >= 1");
    SubgroupDescriptor d;
    d.a = params.a;
    d.b = params.b;
    d.l = l;
    d.modulus = checked_pow(params.a, l);
    d.S = mult_order(params.b, params.a, l);
    d.phi = d.modulus;
    for (u64 p : prime_factors(params.a)) {
        d.phi = d.phi / p * (p - 1);
    }
    require(d.phi % d.S == 0, ErrorKind::consistency, "order does not divide phi(a^l)");

    // a^3 log_a b is irrational for coprime a, b >= 2, so ceil = floor + 1
    const Rational cube(from_u64(params.a) * from_u64(params.a) * from_u64(params.a));
    const BigInt fl = certified_floor([&](unsigned long bits) {
        return cube * log_ratio_enclosure(from_u64(params.b), from_u64(params.a), bits);
    });
    d.kappa = to_u64(fl) + 1;
    d.l1 = l > d.kappa ? static_cast<unsigned>(l - d.kappa) : 0;
    d.kappa1 = static_cast<double>(d.S) / static_cast<double>(d.modulus);
    return d;
}

ExpSumValue exp_sum(const SubgroupDescriptor& desc, const BigInt& m) {
    const u64 N = desc.modulus;
    const u64 r = reduce(m, N);
    CompensatedSum re, im;
    u64 x = 1 % N;
    for (u64 w = 0; w < desc.S; ++w) {
        const auto z = unit(mulmod(r, x, N), N);
        re.add(z.real());
        im.add(z.imag());
        x = mulmod(x, desc.b % N, N);
    }
    return {re.value(), im.value(), desc.S};
}

Lemma5Scan lemma5_scan(const SubgroupDescriptor& desc, const Lemma5Options& options) {
    const u64 N = desc.modulus;
    require(N <= kTableLimit, ErrorKind::resource, "a^l too large for an exhaustive scan");
    require(options.tolerance > 0, ErrorKind::parameter, "tolerance must be positive");
    const RootTable roots(N);
    const auto elems = desc.elements();
    const double limit = options.tolerance * static_cast<double>(desc.S);

    std::vector<ExpSumValue> sums(N);
    parallel_for(N - 1, [&](std::size_t i) {
        const u64 m = i + 1;
        CompensatedSum re, im;
        for (u64 w = 0; w < elems.size(); ++w) {
            auto z = roots[mulmod(m, elems[w], N)];
            if (options.flip_term && *options.flip_term == w) {
                z = -z;
            }
            re.add(z.real());
            im.add(z.imag());
        }
        sums[m] = {re.value(), im.value(), desc.S};
    });

    Lemma5Scan out;
    out.l1 = desc.l1;
    out.vacuous = desc.l1 == 0;
    out.empirical_threshold = desc.l;
    const u64 a_l1 = checked_pow(desc.a, desc.l1);
    for (u64 m = 1; m < N; ++m) {
        const bool vanishes = sums[m].abs() <= limit;
        if (!vanishes) {
            const unsigned v = valuation(m, desc.a);
            if (v < out.empirical_threshold) {
                out.empirical_threshold = v;
                out.empirical_witness = m;
            }
        }
        if (out.vacuous || m % a_l1 == 0) {
            continue;
        }
        ++out.scanned;
        if (!vanishes) {
            out.violations.push_back({m, sums[m]});
        }
    }
    return out;
}

std::complex<double> sigma_sum(const digits::YSet& y, const BigInt& m) {
    const u64 N = checked_pow(y.a, y.l);
    const u64 r = reduce(m, N);
    CompensatedSum re, im;
    for (u64 v : y.members) {
        const auto z = unit(mulmod(r, v, N), N);
        re.add(z.real());
        im.add(z.imag());
    }
    // e(m gamma) with the phase reduced exactly
    BigInt phase = m * y.gamma.num();
    const BigInt den = y.gamma.den();
    mpz_fdiv_r(phase.get_mpz_t(), phase.get_mpz_t(), den.get_mpz_t());
    const long double angle = 2 * std::numbers::pi_v<long double> * to_double(make_rational(phase, den));
    const std::complex<double> shift(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle)));
    return std::complex<double>(re.value(), im.value()) * shift;
}

YSpectrum::YSpectrum(const digits::YSet& y) {
    const u64 N = checked_pow(y.a, y.l);
    require(N <= kTableLimit, ErrorKind::resource, "a^l too large for the spectrum");
    auto* buffer = fftw_alloc_complex(N);
    require(buffer != nullptr, ErrorKind::resource, "FFT buffer allocation failed");
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(N), buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (u64 i = 0; i < N; ++i) {
        buffer[i][0] = 0;
        buffer[i][1] = 0;
    }
    for (u64 v : y.members) {
        buffer[v][0] = 1;
    }
    fftw_execute(plan);
    power_.resize(N);
    for (u64 r = 0; r < N; ++r) {
        power_[r] = buffer[r][0] * buffer[r][0] + buffer[r][1] * buffer[r][1];
    }
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buffer);
}

namespace {

Lemma6Record lemma6_finish(double lhs, const digits::YSet& y, const SubgroupDescriptor& desc, const BigInt& m) {
    BigInt g;
    const BigInt a_l1 = pow(desc.a, desc.l1);
    mpz_gcd(g.get_mpz_t(), a_l1.get_mpz_t(), m.get_mpz_t());
    Lemma6Record rec;
    rec.lhs = lhs;
    rec.rhs = std::pow(static_cast<double>(desc.a), static_cast<double>(desc.kappa)) * g.get_d() *
              static_cast<double>(desc.S) * static_cast<double>(y.Y());
    rec.ratio = rec.lhs / rec.rhs;
    rec.holds = rec.lhs <= rec.rhs * (1 + 1e-9);
    return rec;
}

void check_dims(const digits::YSet& y, const SubgroupDescriptor& desc) {
    require(y.a == desc.a && y.l == desc.l, ErrorKind::domain, "YSet and subgroup use different a or l");
}

}  // namespace

Lemma6Record lemma6_check(const YSpectrum& spectrum, const digits::YSet& y, const SubgroupDescriptor& desc,
                          const BigInt& m) {
    check_dims(y, desc);
    require(spectrum.size() == desc.modulus, ErrorKind::domain, "spectrum size differs from a^l");
    const u64 N = desc.modulus;
    const u64 r = reduce(m, N);
    CompensatedSum lhs;
    u64 x = 1 % N;
    for (u64 w = 0; w < desc.S; ++w) {
        lhs.add(spectrum.power(mulmod(r, x, N)));
        x = mulmod(x, desc.b % N, N);
    }
    return lemma6_finish(lhs.value(), y, desc, m);
}

Lemma6Record lemma6_check(const digits::YSet& y, const SubgroupDescriptor& desc, const BigInt& m,
                          Lemma6Route route) {
    check_dims(y, desc);
    if (route == Lemma6Route::spectrum) {
        return lemma6_check(YSpectrum(y), y, desc, m);
    }
    std::vector<double> terms(desc.S);
    parallel_for(desc.S, [&](std::size_t w) {
        const BigInt mw = m * from_u64(desc.element(w));
        terms[w] = std::norm(sigma_sum(y, mw));
    });
    CompensatedSum lhs;
    for (double t : terms) {
        lhs.add(t);
    }
    return lemma6_finish(lhs.value(), y, desc, m);
}

void BumpSpec::validate() const {
    require(H > 1 && std::isfinite(H), ErrorKind::domain, "bump width H must exceed 1");
}

double bump_eval(const BumpSpec& spec, double t) {
    spec.validate();
    const double norm = std::fabs(t - std::nearbyint(t));
    return std::max(0.0, 1 - spec.H * norm);
}

double bump_fourier(const BumpSpec& spec, const BigInt& m) {
    spec.validate();
    if (m == 0) {
        return 1 / spec.H;
    }
    const double md = m.get_d();
    const double s = std::sin(std::numbers::pi * md / spec.H);
    return spec.H * s * s / (std::numbers::pi * std::numbers::pi * md * md);
}

double bump_derivative_norm2(const BumpSpec& spec) {
    spec.validate();
    return 2 * spec.H;
}

namespace {

// Points y / a^l + gamma as numerators over a common denominator D.
struct ShiftedPoints {
    u64 D = 1;
    std::vector<u64> numerators;
};

ShiftedPoints shifted_points(const digits::YSet& y) {
    const u64 N = checked_pow(y.a, y.l);
    const BigInt D = from_u64(N) * y.gamma.den();
    require(D < (BigInt(1) << 62), ErrorKind::resource, "common denominator of the YSet exceeds 62 bits");
    ShiftedPoints out;
    out.D = to_u64(D);
    const u64 gd = to_u64(y.gamma.den());
    const u64 shift = mulmod(to_u64(y.gamma.num()), N, out.D);
    out.numerators.reserve(y.Y());
    for (u64 v : y.members) {
        out.numerators.push_back((mulmod(v, gd, out.D) + shift) % out.D);
    }
    return out;
}

double remainder_at(const ShiftedPoints& pts, u64 b, u64 w, double H, long double z) {
    const u64 bw = powmod(b, w, pts.D);
    CompensatedSum sum;
    for (u64 n : pts.numerators) {
        const long double t = static_cast<long double>(mulmod(bw, n, pts.D)) / pts.D - z;
        const double norm = static_cast<double>(std::fabs(t - std::nearbyint(t)));
        sum.add(std::max(0.0, 1 - H * norm));
    }
    return sum.value() / static_cast<double>(pts.numerators.size()) - 1 / H;
}

}  // namespace

double remainder(const digits::YSet& y, const SubgroupDescriptor& desc, std::uint64_t w, const BumpSpec& spec,
                 const Rational& z) {
    spec.validate();
    check_dims(y, desc);
    require(w < desc.S, ErrorKind::domain, "w must lie in [0, S)");
    require(y.Y() > 0, ErrorKind::domain, "empty YSet");
    const auto pts = shifted_points(y);
    return remainder_at(pts, desc.b, w, spec.H, static_cast<long double>(frac(z).get_d()));
}

Lemma7Record lemma7_check(const digits::YSet& y, const SubgroupDescriptor& desc, const BumpSpec& spec,
                          const Rational& z) {
    spec.validate();
    check_dims(y, desc);
    require(y.Y() > 0, ErrorKind::domain, "empty YSet");
    require(desc.S <= kMaterializeLimit, ErrorKind::resource, "subgroup too large to scan");
    const auto pts = shifted_points(y);
    const long double zz = static_cast<long double>(frac(z).get_d());

    Lemma7Record rec;
    rec.profile.resize(desc.S);
    parallel_for(desc.S, [&](std::size_t w) { rec.profile[w] = remainder_at(pts, desc.b, w, spec.H, zz); });
    CompensatedSum sq;
    for (u64 w = 0; w < desc.S; ++w) {
        sq.add(rec.profile[w] * rec.profile[w]);
        if (std::fabs(rec.profile[w]) < std::fabs(rec.profile[rec.best_w])) {
            rec.best_w = w;
        }
    }
    rec.mean_square = sq.value() / static_cast<double>(desc.S);
    rec.best_R = rec.profile[rec.best_w];
    rec.bound_scale = bump_derivative_norm2(spec) / static_cast<double>(y.Y());
    rec.ratio = rec.mean_square / rec.bound_scale;
    rec.holds = rec.best_R * rec.best_R <= rec.mean_square * (1 + 1e-12);
    return rec;
}

Rational circle_distance(std::uint64_t p, std::uint64_t P, const Rational& z) {
    Rational t = make_rational(from_u64(p), from_u64(P)) - z;
    return nearest_int_norm(t);
}

Lemma8Result lemma8_search(const digits::YSet& y, const SubgroupDescriptor& desc, const Rational& z, double H) {
    check_dims(y, desc);
    require(H > 1 && std::isfinite(H), ErrorKind::domain, "H must exceed 1");
    require(!y.members.empty(), ErrorKind::domain, "lemma8_search on an empty YSet");
    require(y.s >= y.l, ErrorKind::domain, "YSet with s < l");
    const u64 P = checked_pow(y.a, y.s);
    require(y.gamma == circle::Angle(from_u64(y.lambda), from_u64(P)), ErrorKind::consistency,
            "YSet shift differs from lambda / a^s");

    const Rational zf = frac(z);
    require(fits_u64(zf.get_den()), ErrorKind::resource, "target denominator exceeds 64 bits");
    const u64 zd = to_u64(zf.get_den());
    const u64 zn = to_u64(zf.get_num());
    // ||r/P - zn/zd|| = k / (P zd) with k = min(e, P zd - e), e = (r zd - zn P) mod P zd
    const u128 PZ = static_cast<u128>(P) * zd;
    const u128 offset = static_cast<u128>(zn) * P;

    Lemma8Result out;
    u128 best = ~u128{0};
    u64 bw = 1 % P;
    const u64 b = desc.b % P;
    for (u64 w = 0; w < desc.S; ++w) {
        for (u64 v : y.members) {
            const u64 x = y.x_of(v);
            const u64 r = mulmod(bw, x, P);
            const u128 lhs = static_cast<u128>(r) * zd;
            const u128 e = lhs >= offset ? (lhs - offset) % PZ : (PZ - (offset - lhs) % PZ) % PZ;
            const u128 k = std::min(e, PZ - e);
            if (k < best) {
                best = k;
                out.w = w;
                out.y = v;
                out.x = x;
            }
            ++out.scanned;
        }
        bw = mulmod(bw, b, P);
    }
    out.err = circle_distance(mulmod(powmod(desc.b, out.w, P), out.x, P), P, zf);
    out.success = out.err * Rational(H) <= 1;
    return out;
}

}  // namespace furst::harmonics

#include "furst/interval.hpp"

#include <algorithm>
#include <utility>

#include "furst/error.hpp"

namespace furst {

RationalInterval::RationalInterval(Rational lower, Rational upper)
    : lo(std::move(lower)), hi(std::move(upper)) {
    if (hi < lo) {
        fail(ErrorKind::consistency, "interval with lo > hi");
    }
}

RationalInterval operator+(const RationalInterval& x, const RationalInterval& y) {
    return {x.lo + y.lo, x.hi + y.hi};
}

RationalInterval operator-(const RationalInterval& x, const RationalInterval& y) {
    return {x.lo - y.hi, x.hi - y.lo};
}

RationalInterval operator-(const RationalInterval& x) { return {-x.hi, -x.lo}; }

RationalInterval operator*(const Rational& k, const RationalInterval& x) {
    if (sgn(k) >= 0) {
        return {k * x.lo, k * x.hi};
    }
    return {k * x.hi, k * x.lo};
}

RationalInterval operator*(const RationalInterval& x, const RationalInterval& y) {
    Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RationalInterval operator/(const RationalInterval& x, const RationalInterval& y) {
    if (y.contains(Rational(0))) {
        fail(ErrorKind::domain, "interval division by an enclosure of zero");
    }
    Rational c[4] = {x.lo / y.lo, x.lo / y.hi, x.hi / y.lo, x.hi / y.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RationalInterval abs(const RationalInterval& x) {
    if (sgn(x.lo) >= 0) {
        return x;
    }
    if (sgn(x.hi) <= 0) {
        return -x;
    }
    return {Rational(0), std::max(Rational(-x.lo), x.hi)};
}

RationalInterval nearest_int_norm(const RationalInterval& x) {
    const Rational a = nearest_int_norm(x.lo);
    const Rational b = nearest_int_norm(x.hi);
    // ||t|| is a tent on each [k, k+1]: minima at integers, maxima at halves.
    const bool has_integer = ceil(x.lo) <= floor(x.hi);
    const Rational half(1, 2);
    const bool has_half = ceil(x.lo - half) <= floor(x.hi - half);
    Rational lo = has_integer ? Rational(0) : std::min(a, b);
    Rational hi = has_half ? half : std::max(a, b);
    return {lo, hi};
}

std::optional<bool> certainly_less(const RationalInterval& x, const RationalInterval& y) {
    if (x.hi < y.lo) {
        return true;
    }
    if (x.lo >= y.hi) {
        return false;
    }
    return std::nullopt;
}

Rational to_rational(mpfr_srcptr x) {
    if (!mpfr_number_p(x)) {
        fail(ErrorKind::domain, "non-finite MPFR value");
    }
    if (mpfr_zero_p(x)) {
        return Rational(0);
    }
    BigInt mant;
    const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
    Rational out(mant);
    if (e >= 0) {
        mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return out;
}

RationalInterval log_enclosure(const BigInt& x, unsigned long bits) {
    if (sgn(x) <= 0) {
        fail(ErrorKind::domain, "logarithm of a non-positive integer");
    }
    BigFloat lo(bits);
    BigFloat hi(bits);
    mpfr_set_z(lo.get(), x.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi.get(), x.get_mpz_t(), MPFR_RNDU);
    mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
    return {to_rational(lo.get()), to_rational(hi.get())};
}

RationalInterval log_ratio_enclosure(const BigInt& a, const BigInt& b, unsigned long bits) {
    return log_enclosure(a, bits) / log_enclosure(b, bits);
}

RationalInterval exp_enclosure(double t, unsigned long bits) {
    BigFloat lo(bits);
    BigFloat hi(bits);
    mpfr_set_d(lo.get(), t, MPFR_RNDN);  // exact: bits >= 53
    mpfr_set_d(hi.get(), t, MPFR_RNDN);
    mpfr_exp(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_exp(hi.get(), hi.get(), MPFR_RNDU);
    return {to_rational(lo.get()), to_rational(hi.get())};
}

RationalInterval pow_enclosure(const BigInt& base, double exponent, unsigned long bits) {
    if (sgn(base) <= 0) {
        fail(ErrorKind::domain, "power of a non-positive base");
    }
    BigFloat blo(bits);
    BigFloat bhi(bits);
    BigFloat e(std::max(bits, 64ul));
    mpfr_set_z(blo.get(), base.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(bhi.get(), base.get_mpz_t(), MPFR_RNDU);
    mpfr_set_d(e.get(), exponent, MPFR_RNDN);
    BigFloat lo(bits);
    BigFloat hi(bits);
    // base >= 1 with exponent >= 0 is increasing in base; handle both signs.
    const bool increasing = (exponent >= 0) == (mpfr_cmp_ui(blo.get(), 1) >= 0);
    if (increasing) {
        mpfr_pow(lo.get(), blo.get(), e.get(), MPFR_RNDD);
        mpfr_pow(hi.get(), bhi.get(), e.get(), MPFR_RNDU);
    } else {
        mpfr_pow(lo.get(), bhi.get(), e.get(), MPFR_RNDD);
        mpfr_pow(hi.get(), blo.get(), e.get(), MPFR_RNDU);
    }
    Rational l = to_rational(lo.get());
    Rational h = to_rational(hi.get());
    if (h < l) {
        std::swap(l, h);
    }
    return {l, h};
}

BigInt certified_floor(const std::function<RationalInterval(unsigned long)>& enclose,
                       unsigned long start_bits, unsigned long max_bits) {
    for (unsigned long bits = start_bits; bits <= max_bits; bits *= 2) {
        const RationalInterval r = enclose(bits);
        BigInt f = floor(r.lo);
        if (f == floor(r.hi)) {
            return f;
        }
    }
    throw PrecisionError("floor undecided", max_bits * 2);
}

BigInt certified_floor_pow(const BigInt& base, double exponent) {
    return certified_floor([&](unsigned long bits) { return pow_enclosure(base, exponent, bits); });
}

BigInt certified_floor_exp(double t) {
    return certified_floor([&](unsigned long bits) { return exp_enclosure(t, bits); });
}

}  // namespace furst

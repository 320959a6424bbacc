#pragma once

#include <functional>
#include <optional>

#include <mpfr.h>

#include "furst/bigint.hpp"

namespace furst {

/// Closed interval [lo, hi] with exact rational endpoints. Every enclosure of
/// an irrational quantity in the library ends up in this form, so comparisons
/// on enclosures are exact rational comparisons.
struct RationalInterval {
    Rational lo;
    Rational hi;

    RationalInterval() = default;
    RationalInterval(Rational lower, Rational upper);
    static RationalInterval point(const Rational& x) { return {x, x}; }

    bool exact() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
};

RationalInterval operator+(const RationalInterval& x, const RationalInterval& y);
RationalInterval operator-(const RationalInterval& x, const RationalInterval& y);
RationalInterval operator-(const RationalInterval& x);
RationalInterval operator*(const Rational& k, const RationalInterval& x);
RationalInterval operator*(const RationalInterval& x, const RationalInterval& y);
/// Requires 0 outside y.
RationalInterval operator/(const RationalInterval& x, const RationalInterval& y);

RationalInterval abs(const RationalInterval& x);

/// Range of ||t|| over t in x.
RationalInterval nearest_int_norm(const RationalInterval& x);

/// true/false when decided, nullopt when the enclosures overlap.
std::optional<bool> certainly_less(const RationalInterval& x, const RationalInterval& y);

/// RAII holder for an mpfr_t.
class BigFloat {
public:
    explicit BigFloat(unsigned long bits) { mpfr_init2(value_, static_cast<mpfr_prec_t>(bits)); }
    ~BigFloat() { mpfr_clear(value_); }
    BigFloat(const BigFloat&) = delete;
    BigFloat& operator=(const BigFloat&) = delete;

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }

private:
    mpfr_t value_;
};

/// Exact conversion of a finite MPFR value.
Rational to_rational(mpfr_srcptr x);

RationalInterval log_enclosure(const BigInt& x, unsigned long bits);
RationalInterval log_ratio_enclosure(const BigInt& a, const BigInt& b, unsigned long bits);
RationalInterval exp_enclosure(double t, unsigned long bits);
/// base^exponent for base > 0.
RationalInterval pow_enclosure(const BigInt& base, double exponent, unsigned long bits);

/// Runs `enclose` at increasing precision until the floor of the enclosure is
/// decided. Correctly rounded MPFR operations collapse to a point when the
/// true value is representable, so an exact integer value also terminates.
BigInt certified_floor(const std::function<RationalInterval(unsigned long)>& enclose,
                       unsigned long start_bits = 64, unsigned long max_bits = 1u << 14);

BigInt certified_floor_pow(const BigInt& base, double exponent);
BigInt certified_floor_exp(double t);

}  // namespace furst

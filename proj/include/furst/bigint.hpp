#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace furst {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt parse_bigint(std::string_view text);

/// Parses `p/q` or a plain integer `p`; the result is canonicalized.
Rational parse_rational(std::string_view text);

std::string to_string(const BigInt& x);

/// `p/q` with q > 0; integers print as `p/1`.
std::string to_string(const Rational& x);

BigInt pow(const BigInt& base, unsigned long exponent);
BigInt pow(std::uint64_t base, unsigned long exponent);

BigInt floor(const Rational& x);
BigInt ceil(const Rational& x);

/// Fractional part {x} in [0, 1).
Rational frac(const Rational& x);

/// Distance to the nearest integer, ||x||.
Rational nearest_int_norm(const Rational& x);

Rational make_rational(const BigInt& num, const BigInt& den);

bool fits_u64(const BigInt& x);
std::uint64_t to_u64(const BigInt& x);
BigInt from_u64(std::uint64_t x);

/// a^k as uint64, or 0 when it overflows 2^63.
std::uint64_t checked_pow_u64(std::uint64_t a, unsigned k) noexcept;

double to_double(const Rational& x);

}  // namespace furst

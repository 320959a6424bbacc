#include "furst/bigint.hpp"

#include <cmath>
#include <limits>

#include "furst/error.hpp"

namespace furst {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::parameter: return "parameter";
        case ErrorKind::domain: return "domain";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::precision: return "precision";
        case ErrorKind::resource: return "resource";
        case ErrorKind::consistency: return "consistency";
        case ErrorKind::structural: return "structural";
    }
    return "unknown";
}

BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') {
        s.erase(0, 1);
    }
    BigInt out;
    if (s.empty() || out.set_str(s, 10) != 0) {
        fail(ErrorKind::parameter, "not a decimal integer: '" + std::string(text) + "'");
    }
    return out;
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_bigint(text));
    }
    const BigInt num = parse_bigint(text.substr(0, slash));
    const BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) {
        fail(ErrorKind::parameter, "zero denominator in '" + std::string(text) + "'");
    }
    return make_rational(num, den);
}

std::string to_string(const BigInt& x) { return x.get_str(10); }

std::string to_string(const Rational& x) {
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

BigInt pow(std::uint64_t base, unsigned long exponent) { return pow(from_u64(base), exponent); }

BigInt floor(const Rational& x) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

BigInt ceil(const Rational& x) {
    BigInt out;
    mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

Rational frac(const Rational& x) { return x - Rational(floor(x)); }

Rational nearest_int_norm(const Rational& x) {
    Rational f = frac(x);
    Rational g = Rational(1) - f;
    return f < g ? f : g;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational out(num, den);
    out.canonicalize();
    return out;
}

bool fits_u64(const BigInt& x) {
    return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& x) {
    if (!fits_u64(x)) {
        fail(ErrorKind::resource, "integer does not fit in 64 bits: " + to_string(x));
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
    return out;
}

BigInt from_u64(std::uint64_t x) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(x), 0, 0, &x);
    return out;
}

std::uint64_t checked_pow_u64(std::uint64_t a, unsigned k) noexcept {
    constexpr std::uint64_t limit = std::uint64_t{1} << 63;
    std::uint64_t out = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (a != 0 && out > limit / a) {
            return 0;
        }
        out *= a;
    }
    return out;
}

double to_double(const Rational& x) { return mpq_get_d(x.get_mpq_t()); }

}  // namespace furst

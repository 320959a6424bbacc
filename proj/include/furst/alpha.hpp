#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "furst/bigint.hpp"
#include "furst/interval.hpp"
#include "furst/sunits.hpp"

namespace furst::alpha {

/// Partial quotients [a0; a1, a2, ...]. With `period_from` set, the tail
/// starting at that index repeats forever; otherwise the expansion is finite.
struct ContinuedFraction {
    std::vector<BigInt> quotients;
    std::optional<std::size_t> period_from;

    bool finite() const { return !period_from.has_value(); }
    /// i-th partial quotient; requires i < quotients.size() when finite.
    const BigInt& quotient(std::size_t i) const;
};

struct DecimalText {
    std::string text;
    unsigned long bits = 256;
};

/// A real number given as an exact rational, a continued fraction, or a
/// decimal string read with outward rounding at `bits` precision.
class RealSpec {
public:
    static RealSpec rational(const Rational& x);
    static RealSpec cf(std::vector<BigInt> quotients, std::optional<std::size_t> period_from = {});
    static RealSpec decimal(std::string text, unsigned long bits = 256);

    /// {"rational": "A/Q"} | {"cf": [...], "period_from": i} | {"decimal": "...", "bits": n}
    static RealSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    /// Set for rationals and finite continued fractions.
    std::optional<Rational> exact() const;

    /// Rational enclosure. Periodic continued fractions are refined until the
    /// width is below 2^-bits; decimals always use their own precision.
    RationalInterval enclose(unsigned long bits) const;

    const auto& variant() const { return value_; }

private:
    std::variant<Rational, ContinuedFraction, DecimalText> value_;
};

struct Convergent {
    BigInt p;
    BigInt q;
    std::size_t index = 0;
};

/// Canonical expansion of a rational; the last quotient is >= 2 unless x is an integer.
std::vector<BigInt> cf_expand(const Rational& x);

/// Partial quotients shared by every real in `x`, stopping once a convergent
/// denominator exceeds q_limit. `terminates` is set when the expansion of the
/// (exact) value ended before that.
struct CfPrefix {
    std::vector<BigInt> quotients;
    bool terminates = false;
};

CfPrefix certified_prefix(const RealSpec& x, const BigInt& q_limit);
CfPrefix certified_prefix(const RationalInterval& x, const BigInt& q_limit, unsigned long bits_used);

std::vector<Convergent> convergents_of(const std::vector<BigInt>& quotients);

/// Every convergent with q <= q_limit, each re-verified to satisfy |x - p/q| < 1/q^2.
std::vector<Convergent> convergents(const RealSpec& x, const BigInt& q_limit);

struct DirichletPair {
    BigInt A;
    BigInt Q;
    RationalInterval error;  // |x - A/Q|
};

/// Coprime A/Q with 1 <= Q <= N and |x - A/Q| <= 1/(QN), from the last
/// convergent with denominator <= N.
DirichletPair dirichlet_approx(const RealSpec& x, const BigInt& N);

/// psi(t) = k1 t^-k2 with k1 > 0, k2 >= 1.
struct PsiSpec {
    double k1 = 1;
    double k2 = 1;

    void validate() const;
    RationalInterval psi(const BigInt& q, unsigned long bits) const;
    /// Inverse of t -> 1/psi(t): (k1 N)^(1/k2).
    double Psi(double N) const;
};

struct PsiWitness {
    bool violated = false;
    BigInt violating_q;                 // set when violated
    std::optional<DirichletPair> pair;  // set otherwise
    double Psi_N = 0;
};

/// Checks ||q x|| >= psi(q) at every convergent denominator q <= N (these
/// carry the running minima of ||q x||) and, when it holds, returns the
/// Dirichlet pair, whose Q then lies in [Psi(N), N].
PsiWitness psi_bad_witness(const RealSpec& x, const PsiSpec& psi, const BigInt& N);

struct BakerRow {
    Convergent convergent;
    BigInt next_q;
    RationalInterval distance;  // |log a / log b - p/q|
    RationalInterval scaled;    // q^beta * distance
};

struct BakerProbe {
    std::vector<BakerRow> rows;
    RationalInterval c0;  // minimum of `scaled` over the rows
    std::size_t argmin = 0;
    unsigned long bits = 0;
};

/// Tabulates q^beta |log a/log b - p/q| over the convergents with q <= q_limit.
/// Each row is checked against 1/(q(q'+q)) < |x - p/q| < 1/(q q') with q' the
/// next denominator; c0 must be certified positive.
BakerProbe baker_probe(const sunits::SUnitParams& params, double beta, const BigInt& q_limit,
                       unsigned long bits);

}  // namespace furst::alpha

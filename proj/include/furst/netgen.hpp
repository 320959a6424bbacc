#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "furst/bigint.hpp"
#include "furst/circle.hpp"
#include "furst/sunits.hpp"

namespace furst::netgen {

struct NetOptions {
    /// Accept M >= den(alpha), where fractional parts of Sigma(M) collide.
    bool allow_collisions = false;
    std::size_t budget = sunits::kDefaultElementBudget;
};

/// Delta-net built from the closest pair of Sigma_alpha(M).
struct NetReport {
    sunits::SUnitParams params;
    circle::Angle alpha;
    BigInt M;
    BigInt M1;  // M * den(alpha)

    circle::Angle eta_hi;
    circle::Angle eta_lo;
    BigInt q_hi;  // smallest q in Sigma(M) with {q alpha} = eta_hi
    BigInt q_lo;
    Rational d;   // 1 / (eta_hi - eta_lo)
    std::size_t sigma_size = 0;   // |Sigma(M)|
    std::size_t point_count = 0;  // |Sigma_alpha(M)|

    std::vector<BigInt> q_j;  // Sigma(floor(d))
    std::size_t k = 0;
    BigInt D_d;               // max gap over q_1..q_{k+1}
    std::pair<BigInt, BigInt> D_d_pair;
    Rational delta;           // D_d / d
    circle::PointSet net;
    Rational measured_dispersion;

    bool pigeonhole_ok = false;  // eta_hi - eta_lo <= 1/point_count
    bool window_ok = false;      // point_count <= d <= den(alpha)
};

/// Throws a precondition error when M >= den(alpha) unless collisions are
/// allowed, and a structural error when Sigma_alpha(M) has fewer than two
/// points. Net dispersion above delta is a consistency error.
NetReport build_net(const sunits::SUnitParams& params, const circle::Angle& alpha, const BigInt& M,
                    const NetOptions& options = {});

/// Largest n >= 0 with a^n <= 1/delta.
unsigned choose_n(const Rational& delta, std::uint64_t a);

/// Residues mod a^n, sorted and deduplicated.
struct DigitSet {
    std::uint64_t a = 2;
    unsigned n = 0;
    std::vector<std::uint64_t> residues;
    /// M1 of the Sigma_alpha(M1) the set was built from, if any.
    std::optional<BigInt> source_M1;

    /// Sorts, deduplicates and range-checks residues.
    static DigitSet make(std::uint64_t a, unsigned n, std::vector<std::uint64_t> residues);
    std::uint64_t modulus() const;
    std::size_t size() const { return residues.size(); }
};

/// { floor(a^n eta) : eta in Sigma_alpha(M1) }.
DigitSet digit_set(const sunits::SUnitParams& params, const circle::Angle& alpha, const BigInt& M1,
                   unsigned n, std::size_t budget = sunits::kDefaultElementBudget);

struct Lemma2Record {
    std::size_t X_n = 0;
    double sqrtN_half = 0;
    bool pass = false;  // 4 X_n^2 >= a^n, advisory
};

/// Cardinality check for a digit set built from the report's parameters.
Lemma2Record verify_lemma2(const NetReport& report, const DigitSet& ds);

}  // namespace furst::netgen

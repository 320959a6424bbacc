#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "furst/bigint.hpp"

namespace furst::sunits {

/// Default cap on the number of elements any single enumeration may produce.
inline constexpr std::size_t kDefaultElementBudget = 20'000'000;

/// Coprime bases a, b >= 2 generating Sigma = {a^u b^v : u, v >= 0}.
struct SUnitParams {
    std::uint64_t a = 2;
    std::uint64_t b = 3;

    /// Throws a parameter error unless a, b >= 2 and gcd(a, b) = 1.
    void validate() const;
};

struct SUnit {
    unsigned u = 0;
    unsigned v = 0;
    BigInt value;

    friend bool operator==(const SUnit&, const SUnit&) = default;
};

/// Every a^u b^v <= M in ascending order, starting with 1.
/// Boundary decisions are exact integer comparisons.
std::vector<SUnit> enumerate_sigma(const SUnitParams& params, const BigInt& M,
                                   std::size_t budget = kDefaultElementBudget);

/// Smallest element of Sigma strictly greater than M.
SUnit successor(const SUnitParams& params, const BigInt& M);

/// Writes q = a^u b^v; returns false when q has other prime factors.
bool factor(const SUnitParams& params, const BigInt& q, unsigned& u, unsigned& v);

enum class Quadrant { nonneg, positive };

struct LatticeCount {
    BigInt count;
    double two_term_estimate = 0;
};

/// t^2/(2 ln a ln b) - t (1/(2 ln a) + 1/(2 ln b)).
double two_term_estimate(const SUnitParams& params, double t);

/// Integer points (x, y) with x ln a + y ln b <= t, on the closed (nonneg) or
/// open (positive) quadrant. `t` is taken as the exact binary value of the
/// double; every floor is decided by interval arithmetic.
LatticeCount count_lattice(const SUnitParams& params, double t, Quadrant quadrant,
                           std::size_t budget = kDefaultElementBudget);

/// Same count with the threshold t = ln M held exactly: points on the
/// boundary line are resolved by comparing a^x b^y with M.
LatticeCount count_lattice_log(const SUnitParams& params, const BigInt& M, Quadrant quadrant,
                               std::size_t budget = kDefaultElementBudget);

struct GapEntry {
    BigInt q;
    BigInt gap;  // distance to the next element of Sigma
};

struct GapReport {
    std::vector<GapEntry> gaps;
    BigInt max_gap;
    std::pair<BigInt, BigInt> argmax_pair;
    /// max over entries of gap/q * (ln q)^(1/(beta-1)).
    double normalized_constant = 0;
};

/// Gaps between consecutive elements of Sigma(M), including the gap from the
/// largest element to its successor beyond M. Ties keep the first maximum.
GapReport gap_report(const SUnitParams& params, const BigInt& M, double beta,
                     std::size_t budget = kDefaultElementBudget);

}  // namespace furst::sunits

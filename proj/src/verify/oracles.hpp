#pragma once

// Brute-force reference computations. None of them calls into the module
// under test beyond BigInt helpers.

#include <cstdint>
#include <utility>
#include <vector>

#include "furst/bigint.hpp"

namespace furst::verify::oracle {

struct Unit {
    unsigned u = 0;
    unsigned v = 0;
    std::uint64_t value = 0;
};

/// a^u b^v <= M by a double loop, sorted by value.
std::vector<Unit> sigma_u64(std::uint64_t a, std::uint64_t b, std::uint64_t M);

/// Sorted distinct residues q A mod Q over q in Sigma(M).
std::vector<BigInt> residues(std::uint64_t a, std::uint64_t b, std::uint64_t M, const BigInt& A,
                             const BigInt& Q);

/// Largest distance from a point of [0, 1] to a sorted nonempty point list.
Rational interval_dispersion(const std::vector<Rational>& sorted);

/// ||p / P - z|| scaled by P den(z), exact.
BigInt scaled_distance(const BigInt& p, const BigInt& P, const Rational& z);

double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace furst::verify::oracle

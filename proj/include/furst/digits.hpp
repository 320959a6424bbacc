#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "furst/bigint.hpp"
#include "furst/circle.hpp"
#include "furst/netgen.hpp"
#include "furst/sunits.hpp"

namespace furst::digits {

using netgen::DigitSet;

struct Projection {
    DigitSet ds;  // residues mod a^s, with n = s
    /// M1 * a^(n-s): every projected residue has a witness in Sigma_alpha(M2).
    std::optional<BigInt> M2;
};

/// Residues of ds mod a^s.
Projection project(const DigitSet& ds, unsigned s);

/// floor(x / a^k).
std::uint64_t ta_shift(std::uint64_t x, std::uint64_t a, unsigned k);

/// Members of the s-digit projection congruent to lambda mod a^(s-l).
struct Stratum {
    std::uint64_t a = 2;
    unsigned s = 0;
    unsigned l = 0;
    std::uint64_t lambda = 0;
    std::vector<std::uint64_t> members;  // ascending

    std::size_t X() const { return members.size(); }
};

/// Nonempty strata of project(ds, s) keyed by lambda.
std::map<std::uint64_t, Stratum> stratify(const DigitSet& ds, unsigned s, unsigned l);

struct SearchResult {
    Stratum best;
    unsigned j = 0;           // s = n - j l
    unsigned J = 0;
    double threshold = 0;     // a^((1/2 - 2 eps) l)
    bool pass = false;        // X >= threshold, advisory
    std::size_t grid_points = 0;
};

/// Best stratum over s = n - j l, j = 0..ceil((1-eps) n / l), s >= eps n.
/// Ties prefer larger s, then smaller lambda.
SearchResult combinatorial_search(const DigitSet& ds, unsigned l, double eps);

struct YSet {
    std::uint64_t a = 2;
    unsigned l = 0;
    unsigned s = 0;
    std::uint64_t lambda = 0;
    circle::Angle gamma;                 // lambda / a^s
    std::vector<std::uint64_t> members;  // ascending, in [0, a^l)
    BigInt source_M2;

    std::size_t Y() const { return members.size(); }
    /// lambda + y a^(s-l)
    std::uint64_t x_of(std::uint64_t y) const;
};

YSet extract_y(const Stratum& st, const BigInt& m2);

/// Builds a YSet directly from top digits and a shift (synthetic inputs).
YSet make_yset(std::uint64_t a, unsigned l, std::vector<std::uint64_t> members, const circle::Angle& gamma);

/// Smallest q in Sigma(M2) with floor(a^s {q alpha}) = x, for every x hit.
std::map<std::uint64_t, BigInt> witness_table(const sunits::SUnitParams& params, const circle::Angle& alpha,
                                              const BigInt& M2, unsigned s,
                                              std::size_t budget = sunits::kDefaultElementBudget);

}  // namespace furst::digits

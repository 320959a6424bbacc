#pragma once

#include <cstdint>

// Values frozen from a full verification run with the default seed.
namespace furst::regression {

// (2,3), M = 10^6: (count - estimate) / t^(1 - 1/(beta-1)), t = ln M
inline constexpr double kRemainderRatio = 4.510895143781801;

// (2,3), q <= 10^10: max of gap * ln(q)^(1/(beta-1)) / q
inline constexpr double kGapConstant = 0.54129338292565;

// max over trials of mean_square * Y / (2H), H = 4, 8, 16
inline constexpr double kLemma7Envelope[3] = {0.013390074004457903, 0.004331737015287657,
                                                0.0012316495081511154};

// solver dominance table: sum of brute-force error midpoints and a hash of the chosen q
inline constexpr double kBruteErrorSum = 0.49645263973672327;
inline constexpr std::uint64_t kBruteHash = 17051394068940101423ull;

// Spearman correlation of (k, dispersion) for Q = 10^k, k = 3..15
inline constexpr double kDensitySpearman = -0.9615384615384616;

// min over convergents of log 2 / log 3 with q <= 10^10 of q^beta |x - p/q|
inline constexpr double kBakerC0 = 0.3690702464285425;
inline constexpr std::uint64_t kBakerArgmin = 1;

// (2,3), l = 14: smallest valuation v_2(m) of an m whose sum does not vanish
inline constexpr unsigned kLemma5Threshold = 11;

}  // namespace furst::regression

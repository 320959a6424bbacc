#pragma once

#include <cstdint>
#include <random>

#include "furst/bigint.hpp"

namespace furst {

/// Seeded generator used everywhere randomness is needed (random A, random
/// digit sets, random shifts). The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; bounded draws use rejection sampling
/// instead of std::uniform_int_distribution so that results do not depend on
/// the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return x % n;
    }

    /// Uniform in [lo, hi].
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        if (hi - lo == ~std::uint64_t{0}) {
            return engine_();
        }
        return lo + below(hi - lo + 1);
    }

    /// Uniform in [0, n) for big n > 0.
    BigInt below(const BigInt& n) {
        const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        for (;;) {
            BigInt x = 0;
            for (std::size_t done = 0; done < bits; done += 64) {
                x <<= 64;
                x += from_u64(engine_());
            }
            const std::size_t excess = (bits + 63) / 64 * 64 - bits;
            x >>= static_cast<mp_bitcnt_t>(excess);
            if (x < n) {
                return x;
            }
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace furst

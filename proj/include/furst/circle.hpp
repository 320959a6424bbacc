#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "furst/bigint.hpp"
#include "furst/sunits.hpp"

namespace furst::circle {

/// Exact point of Q/Z stored as a reduced fraction num/den with 0 <= num < den.
class Angle {
public:
    Angle() = default;
    /// Reduces num/den modulo 1. den must be nonzero.
    Angle(const BigInt& num, const BigInt& den);
    /// Requires 0 <= x < 1.
    explicit Angle(const Rational& x);

    static Angle parse(std::string_view text);

    const Rational& value() const { return value_; }
    BigInt num() const { return value_.get_num(); }
    BigInt den() const { return value_.get_den(); }
    std::string str() const { return to_string(value_); }

    friend bool operator==(const Angle& x, const Angle& y) { return x.value_ == y.value_; }
    friend bool operator<(const Angle& x, const Angle& y) { return x.value_ < y.value_; }

private:
    Rational value_{0};
};

/// Strictly ascending finite subset of [0, 1]. Sets built from fractional
/// parts live in [0, 1); nets may also contain the endpoint 1.
class PointSet {
public:
    PointSet() = default;
    /// Sorts and removes duplicates; every value must lie in [0, 1].
    static PointSet from_values(std::vector<Rational> values);
    static PointSet from_angles(const std::vector<Angle>& angles);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const Rational& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Rational>& values() const { return points_; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

private:
    std::vector<Rational> points_;
};

/// {q * alpha}.
Angle frac_mul(const BigInt& q, const Angle& alpha);

/// Sigma_alpha(M) = { {q alpha} : q in Sigma(M) } as a set.
PointSet sigma_alpha(const sunits::SUnitParams& params, const BigInt& M, const Angle& alpha,
                     std::size_t budget = sunits::kDefaultElementBudget);

enum class Metric { interval, circular };

/// Smallest delta such that every point of [0, 1] (interval) or of the
/// circle (circular) is within delta of the set.
Rational dispersion(const PointSet& points, Metric metric = Metric::interval);

struct GapPair {
    Rational eta_hi;
    Rational eta_lo;
    Rational gap;
};

/// Adjacent pair with the smallest difference; ties go to the smallest eta_lo.
GapPair min_positive_gap(const PointSet& points);

}  // namespace furst::circle

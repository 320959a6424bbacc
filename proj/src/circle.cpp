#include "furst/circle.hpp"

#include <algorithm>

#include "furst/error.hpp"

namespace furst::circle {

Angle::Angle(const BigInt& num, const BigInt& den) {
    require(den != 0, ErrorKind::domain, "angle with zero denominator");
    value_ = frac(make_rational(num, den));
}

Angle::Angle(const Rational& x) : value_(x) {
    value_.canonicalize();
    require(sgn(value_) >= 0 && value_ < 1, ErrorKind::domain,
            "angle must lie in [0, 1): " + to_string(value_));
}

Angle Angle::parse(std::string_view text) { return Angle(parse_rational(text)); }

PointSet PointSet::from_values(std::vector<Rational> values) {
    for (const auto& v : values) {
        require(sgn(v) >= 0 && v <= 1, ErrorKind::domain, "point outside [0, 1]: " + to_string(v));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    PointSet out;
    out.points_ = std::move(values);
    return out;
}

PointSet PointSet::from_angles(const std::vector<Angle>& angles) {
    std::vector<Rational> values;
    values.reserve(angles.size());
    for (const auto& x : angles) {
        values.push_back(x.value());
    }
    return from_values(std::move(values));
}

Angle frac_mul(const BigInt& q, const Angle& alpha) {
    const BigInt den = alpha.den();
    BigInt r = q * alpha.num();
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t());
    return Angle(r, den);
}

PointSet sigma_alpha(const sunits::SUnitParams& params, const BigInt& M, const Angle& alpha,
                     std::size_t budget) {
    const auto elements = sunits::enumerate_sigma(params, M, budget);
    std::vector<Rational> values;
    values.reserve(elements.size());
    for (const auto& e : elements) {
        values.push_back(frac_mul(e.value, alpha).value());
    }
    return PointSet::from_values(std::move(values));
}

Rational dispersion(const PointSet& points, Metric metric) {
    require(!points.empty(), ErrorKind::domain, "dispersion of an empty point set");
    Rational widest = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        Rational gap = points[i + 1] - points[i];
        if (gap > widest) {
            widest = std::move(gap);
        }
    }
    if (metric == Metric::circular) {
        Rational wrap = points[0] + 1 - points[points.size() - 1];
        if (wrap > widest) {
            widest = std::move(wrap);
        }
        return widest / 2;
    }
    Rational delta = widest / 2;
    delta = std::max(delta, points[0]);
    delta = std::max(delta, Rational(1 - points[points.size() - 1]));
    return delta;
}

GapPair min_positive_gap(const PointSet& points) {
    require(points.size() >= 2, ErrorKind::domain, "min_positive_gap needs at least two points");
    std::size_t best = 0;
    Rational best_gap = points[1] - points[0];
    for (std::size_t i = 1; i + 1 < points.size(); ++i) {
        Rational gap = points[i + 1] - points[i];
        if (gap < best_gap) {  // strict: earlier (smaller eta_lo) wins ties
            best_gap = std::move(gap);
            best = i;
        }
    }
    return {points[best + 1], points[best], best_gap};
}

}  // namespace furst::circle

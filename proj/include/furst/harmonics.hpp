#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "furst/bigint.hpp"
#include "furst/circle.hpp"
#include "furst/digits.hpp"
#include "furst/sunits.hpp"

namespace furst::harmonics {

/// Order of b modulo a^l, found by descending from the Carmichael exponent.
std::uint64_t mult_order(std::uint64_t b, std::uint64_t a, unsigned l);

/// Cyclic subgroup <b> of (Z / a^l)^*.
struct SubgroupDescriptor {
    std::uint64_t a = 2;
    std::uint64_t b = 3;
    unsigned l = 1;
    std::uint64_t modulus = 2;  // a^l
    std::uint64_t S = 1;        // order of b
    std::uint64_t phi = 1;      // phi(a^l)
    std::uint64_t kappa = 0;    // ceil(a^3 log_a b)
    unsigned l1 = 0;            // max(l - kappa, 0)
    double kappa1 = 0;          // S / a^l

    /// b^w mod a^l
    std::uint64_t element(std::uint64_t w) const;
    /// b^0, b^1, ..., b^(S-1) mod a^l
    std::vector<std::uint64_t> elements() const;
};

SubgroupDescriptor subgroup(const sunits::SUnitParams& params, unsigned l);

struct ExpSumValue {
    double re = 0;
    double im = 0;
    std::uint64_t term_count = 0;

    double abs() const { return std::hypot(re, im); }
};

/// sum over w < S of e(m b^w / a^l), with m reduced mod a^l.
ExpSumValue exp_sum(const SubgroupDescriptor& desc, const BigInt& m);

struct Lemma5Violation {
    std::uint64_t m = 0;
    ExpSumValue value;
};

struct Lemma5Options {
    double tolerance = 1e-6;
    /// Negates the term with this index w in every sum (mutation check).
    std::optional<std::uint64_t> flip_term;
};

struct Lemma5Scan {
    bool vacuous = false;  // l1 = 0
    unsigned l1 = 0;
    std::uint64_t scanned = 0;
    std::vector<Lemma5Violation> violations;
    /// Smallest a-adic valuation of an m in [1, a^l) with a nonvanishing sum;
    /// every m of smaller valuation has a vanishing sum. Equals l if all vanish.
    unsigned empirical_threshold = 0;
    std::uint64_t empirical_witness = 0;
};

/// Every m in [1, a^l) with m != 0 mod a^l1 and |sum| > tolerance * S.
Lemma5Scan lemma5_scan(const SubgroupDescriptor& desc, const Lemma5Options& options = {});

/// sigma(m) = sum over y of e(m (y / a^l + gamma)).
std::complex<double> sigma_sum(const digits::YSet& y, const BigInt& m);

/// |sum over y of e(r y / a^l)|^2 for every r in [0, a^l), by FFT.
class YSpectrum {
public:
    explicit YSpectrum(const digits::YSet& y);
    double power(std::uint64_t r) const { return power_[r % power_.size()]; }
    std::size_t size() const { return power_.size(); }

private:
    std::vector<double> power_;
};

enum class Lemma6Route { spectrum, direct };

struct Lemma6Record {
    double lhs = 0;   // sum over w of |sigma(m b^w)|^2
    double rhs = 0;   // a^kappa gcd(a^l1, m) S Y
    double ratio = 0;
    bool holds = false;  // lhs <= rhs (1 + 1e-9)
};

Lemma6Record lemma6_check(const digits::YSet& y, const SubgroupDescriptor& desc, const BigInt& m,
                          Lemma6Route route = Lemma6Route::spectrum);
Lemma6Record lemma6_check(const YSpectrum& spectrum, const digits::YSet& y, const SubgroupDescriptor& desc,
                          const BigInt& m);

/// Triangle kernel f(t) = max(0, 1 - H ||t||).
struct BumpSpec {
    double H = 2;
    void validate() const;
};

double bump_eval(const BumpSpec& spec, double t);
/// f_0 = 1/H; f_m = H sin^2(pi m / H) / (pi m)^2.
double bump_fourier(const BumpSpec& spec, const BigInt& m);
/// ||f'||_2^2 = 2H
double bump_derivative_norm2(const BumpSpec& spec);

/// (1/Y) sum over y of f(b^w (y / a^l + gamma) - z) - 1/H.
double remainder(const digits::YSet& y, const SubgroupDescriptor& desc, std::uint64_t w, const BumpSpec& spec,
                 const Rational& z);

struct Lemma7Record {
    std::vector<double> profile;  // R for w = 0..S-1
    double mean_square = 0;
    double bound_scale = 0;       // ||f'||^2 / Y
    double ratio = 0;             // mean_square / bound_scale
    std::uint64_t best_w = 0;
    double best_R = 0;
    bool holds = false;           // |R_best| <= sqrt(mean_square)
};

Lemma7Record lemma7_check(const digits::YSet& y, const SubgroupDescriptor& desc, const BumpSpec& spec,
                          const Rational& z);

struct Lemma8Result {
    bool success = false;  // err <= 1/H
    std::uint64_t w = 0;
    std::uint64_t y = 0;
    std::uint64_t x = 0;   // lambda + y a^(s-l)
    Rational err;          // || b^w x / a^s - z ||
    std::uint64_t scanned = 0;
};

/// Exhaustive minimum of ||b^w x / a^s - z|| over w < S and x from the YSet.
/// Ties go to the smallest (w, x).
Lemma8Result lemma8_search(const digits::YSet& y, const SubgroupDescriptor& desc, const Rational& z, double H);

/// ||p / P - z|| as an exact rational, for 0 <= p < P.
Rational circle_distance(std::uint64_t p, std::uint64_t P, const Rational& z);

}  // namespace furst::harmonics

#include "furst/sunits.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "furst/error.hpp"
#include "furst/interval.hpp"

namespace furst::sunits {

void SUnitParams::validate() const {
    require(a >= 2 && b >= 2, ErrorKind::parameter,
            "bases must satisfy a, b >= 2 (got a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
    require(std::gcd(a, b) == 1, ErrorKind::parameter,
            "bases must be coprime (gcd(" + std::to_string(a) + ", " + std::to_string(b) + ") = " +
                std::to_string(std::gcd(a, b)) + ")");
}

std::vector<SUnit> enumerate_sigma(const SUnitParams& params, const BigInt& M, std::size_t budget) {
    params.validate();
    require(M >= 1, ErrorKind::domain, "enumeration bound M must be >= 1");

    // One column per power of a; each column is ascending in v.
    std::vector<std::vector<SUnit>> columns;
    std::size_t total = 0;
    const BigInt a(from_u64(params.a));
    const BigInt b(from_u64(params.b));
    BigInt au = 1;
    for (unsigned u = 0; au <= M; ++u, au *= a) {
        std::vector<SUnit> column;
        BigInt value = au;
        for (unsigned v = 0; value <= M; ++v, value *= b) {
            column.push_back({u, v, value});
            if (++total > budget) {
                fail(ErrorKind::resource,
                     "enumeration of Sigma(" + to_string(M) + ") exceeds the element budget of " +
                         std::to_string(budget));
            }
        }
        columns.push_back(std::move(column));
    }

    using Head = std::pair<std::size_t, std::size_t>;  // column, position
    auto later = [&](const Head& x, const Head& y) {
        return columns[x.first][x.second].value > columns[y.first][y.second].value;
    };
    std::priority_queue<Head, std::vector<Head>, decltype(later)> heap(later);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        heap.emplace(c, 0);
    }
    std::vector<SUnit> out;
    out.reserve(total);
    while (!heap.empty()) {
        auto [c, i] = heap.top();
        heap.pop();
        out.push_back(std::move(columns[c][i]));
        if (i + 1 < columns[c].size()) {
            heap.emplace(c, i + 1);
        }
    }
    return out;
}

SUnit successor(const SUnitParams& params, const BigInt& M) {
    params.validate();
    const BigInt a(from_u64(params.a));
    const BigInt b(from_u64(params.b));
    SUnit best;
    bool have = false;
    BigInt au = 1;
    for (unsigned u = 0;; ++u, au *= a) {
        BigInt value = au;
        unsigned v = 0;
        while (value <= M) {
            value *= b;
            ++v;
        }
        if (!have || value < best.value) {
            best = {u, v, value};
            have = true;
        }
        if (au > M) {
            break;  // this column already starts above M
        }
    }
    return best;
}

bool factor(const SUnitParams& params, const BigInt& q, unsigned& u, unsigned& v) {
    if (q < 1) {
        return false;
    }
    BigInt rest = q;
    u = 0;
    v = 0;
    const BigInt a(from_u64(params.a));
    const BigInt b(from_u64(params.b));
    while (mpz_divisible_p(rest.get_mpz_t(), a.get_mpz_t()) != 0) {
        rest /= a;
        ++u;
    }
    while (mpz_divisible_p(rest.get_mpz_t(), b.get_mpz_t()) != 0) {
        rest /= b;
        ++v;
    }
    return rest == 1;
}

double two_term_estimate(const SUnitParams& params, double t) {
    const double la = std::log(static_cast<double>(params.a));
    const double lb = std::log(static_cast<double>(params.b));
    return t * t / (2 * la * lb) - t * (1 / (2 * la) + 1 / (2 * lb));
}

namespace {

void check_budget(const SUnitParams& params, double t, std::size_t budget) {
    const double la = std::log(static_cast<double>(params.a));
    const double lb = std::log(static_cast<double>(params.b));
    const double upper = t * t / (2 * la * lb) + t * (1 / la + 1 / lb) + 1;
    if (upper > static_cast<double>(budget)) {
        fail(ErrorKind::resource, "lattice count for t=" + std::to_string(t) +
                                      " exceeds the element budget of " + std::to_string(budget));
    }
}

// Counts points column by column. `column_height(x)` returns the largest y
// with x ln a + y ln b <= t (or -1 when none).
template <class Height>
BigInt sum_columns(const BigInt& x_max, Quadrant quadrant, Height&& column_height) {
    BigInt count = 0;
    const unsigned long first = quadrant == Quadrant::nonneg ? 0 : 1;
    for (BigInt x = first; x <= x_max; ++x) {
        const BigInt y = column_height(x);
        if (quadrant == Quadrant::nonneg) {
            if (y >= 0) {
                count += y + 1;
            }
        } else if (y >= 1) {
            count += y;
        }
    }
    return count;
}

}  // namespace

LatticeCount count_lattice(const SUnitParams& params, double t, Quadrant quadrant, std::size_t budget) {
    params.validate();
    require(t >= 0 && std::isfinite(t), ErrorKind::domain, "lattice threshold t must be finite and >= 0");
    check_budget(params, t, budget);
    const Rational T(t);
    const BigInt a(from_u64(params.a));
    const BigInt b(from_u64(params.b));
    const BigInt x_max = certified_floor(
        [&](unsigned long bits) { return RationalInterval::point(T) / log_enclosure(a, bits); });
    const BigInt count = sum_columns(x_max, quadrant, [&](const BigInt& x) {
        return certified_floor([&](unsigned long bits) {
            const RationalInterval rest = RationalInterval::point(T) - Rational(x) * log_enclosure(a, bits);
            return rest / log_enclosure(b, bits);
        });
    });
    return {count, two_term_estimate(params, t)};
}

LatticeCount count_lattice_log(const SUnitParams& params, const BigInt& M, Quadrant quadrant,
                               std::size_t budget) {
    params.validate();
    require(M >= 1, ErrorKind::domain, "count_lattice_log requires M >= 1");
    const double t = std::log(M.get_d());
    check_budget(params, t, budget);
    const BigInt a(from_u64(params.a));
    const BigInt b(from_u64(params.b));

    // floor of an enclosure of an integer-valued boundary quantity; when the
    // enclosure straddles k the exact test a^x b^k <= M decides.
    auto decide = [&](const RationalInterval& r, const BigInt& x) -> std::optional<BigInt> {
        const BigInt lo = floor(r.lo);
        const BigInt hi = floor(r.hi);
        if (lo == hi) {
            return lo;
        }
        if (hi - lo == 1) {
            const BigInt q = pow(a, x.get_ui()) * pow(b, hi.get_ui());
            return q <= M ? hi : lo;
        }
        return std::nullopt;
    };
    auto height = [&](const BigInt& x) -> BigInt {
        for (unsigned long bits = 64; bits <= (1u << 14); bits *= 2) {
            const RationalInterval lnM = log_enclosure(M, bits);
            const RationalInterval rest = lnM - Rational(x) * log_enclosure(a, bits);
            if (auto y = decide(rest / log_enclosure(b, bits), x)) {
                return *y;
            }
        }
        throw PrecisionError("column height undecided", 1u << 15);
    };
    // x_max: largest x with a^x <= M, decided the same way on the y = 0 axis.
    BigInt x_max = 0;
    for (unsigned long bits = 64;; bits *= 2) {
        const RationalInterval r = log_enclosure(M, bits) / log_enclosure(a, bits);
        const BigInt lo = floor(r.lo);
        const BigInt hi = floor(r.hi);
        if (lo == hi) {
            x_max = lo;
            break;
        }
        if (hi - lo == 1) {
            x_max = pow(a, hi.get_ui()) <= M ? hi : lo;
            break;
        }
        if (bits > (1u << 14)) {
            throw PrecisionError("row length undecided", bits * 2);
        }
    }
    return {sum_columns(x_max, quadrant, height), two_term_estimate(params, t)};
}

GapReport gap_report(const SUnitParams& params, const BigInt& M, double beta, std::size_t budget) {
    params.validate();
    require(M >= 2, ErrorKind::domain, "gap_report requires M >= 2");
    require(beta > 2, ErrorKind::domain, "gap_report requires beta > 2");
    const auto elements = enumerate_sigma(params, M, budget);
    const SUnit next = successor(params, M);

    GapReport report;
    report.gaps.reserve(elements.size());
    BigFloat lnq(128);
    BigFloat term(128);
    BigFloat power(128);
    mpfr_set_d(power.get(), 1.0 / (beta - 1.0), MPFR_RNDN);
    BigFloat best(128);
    mpfr_set_zero(best.get(), 1);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const BigInt& q = elements[i].value;
        const BigInt& following = i + 1 < elements.size() ? elements[i + 1].value : next.value;
        BigInt gap = following - q;
        if (report.gaps.empty() || gap > report.max_gap) {
            report.max_gap = gap;
            report.argmax_pair = {q, following};
        }
        if (q >= 2) {
            mpfr_set_z(lnq.get(), q.get_mpz_t(), MPFR_RNDN);
            mpfr_log(lnq.get(), lnq.get(), MPFR_RNDN);
            mpfr_pow(lnq.get(), lnq.get(), power.get(), MPFR_RNDN);
            mpfr_set_z(term.get(), gap.get_mpz_t(), MPFR_RNDN);
            mpfr_div_z(term.get(), term.get(), q.get_mpz_t(), MPFR_RNDN);
            mpfr_mul(term.get(), term.get(), lnq.get(), MPFR_RNDN);
            if (mpfr_greater_p(term.get(), best.get())) {
                mpfr_set(best.get(), term.get(), MPFR_RNDN);
            }
        }
        report.gaps.push_back({q, std::move(gap)});
    }
    report.normalized_constant = mpfr_get_d(best.get(), MPFR_RNDN);
    return report;
}

}  // namespace furst::sunits

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace furst::verify::oracle {

std::vector<Unit> sigma_u64(std::uint64_t a, std::uint64_t b, std::uint64_t M) {
    std::vector<Unit> out;
    std::uint64_t pa = 1;
    for (unsigned u = 0; pa <= M; ++u) {
        std::uint64_t q = pa;
        for (unsigned v = 0; q <= M; ++v) {
            out.push_back({u, v, q});
            if (q > M / b) {
                break;
            }
            q *= b;
        }
        if (pa > M / a) {
            break;
        }
        pa *= a;
    }
    std::sort(out.begin(), out.end(), [](const Unit& x, const Unit& y) { return x.value < y.value; });
    return out;
}

std::vector<BigInt> residues(std::uint64_t a, std::uint64_t b, std::uint64_t M, const BigInt& A,
                             const BigInt& Q) {
    std::vector<BigInt> out;
    for (const auto& e : sigma_u64(a, b, M)) {
        BigInt r = from_u64(e.value) * A;
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), Q.get_mpz_t());
        out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rational interval_dispersion(const std::vector<Rational>& sorted) {
    Rational worst = sorted.front();
    if (Rational(1 - sorted.back()) > worst) {
        worst = 1 - sorted.back();
    }
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        Rational half = (sorted[i] - sorted[i - 1]) / 2;
        if (half > worst) {
            worst = half;
        }
    }
    return worst;
}

BigInt scaled_distance(const BigInt& p, const BigInt& P, const Rational& z) {
    const BigInt zd = z.get_den();
    const BigInt PZ = P * zd;
    BigInt e = p * zd - z.get_num() * P;
    mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), PZ.get_mpz_t());
    BigInt other = PZ - e;
    return e < other ? e : other;
}

namespace {

std::vector<double> ranks(const std::vector<double>& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) {
            ++j;
        }
        const double mean = (static_cast<double>(i) + static_cast<double>(j)) / 2 + 1;
        for (std::size_t k = i; k <= j; ++k) {
            r[idx[k]] = mean;
        }
        i = j + 1;
    }
    return r;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace furst::verify::oracle

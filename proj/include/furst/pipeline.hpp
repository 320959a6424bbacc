#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "furst/alpha.hpp"
#include "furst/bigint.hpp"
#include "furst/circle.hpp"
#include "furst/digits.hpp"
#include "furst/harmonics.hpp"
#include "furst/interval.hpp"
#include "furst/netgen.hpp"
#include "furst/sunits.hpp"

namespace furst::pipeline {

inline constexpr double kBakerBeta = 5.116201;

struct Overrides {
    std::optional<BigInt> M;
    std::optional<unsigned> n;
    std::optional<unsigned> s;
    std::optional<unsigned> l;
    std::optional<double> H;
};

struct PipelineConfig {
    sunits::SUnitParams params;
    BigInt A = 1;
    BigInt Q = 101;
    double delta = 1;
    double eps = 0.05;
    double C = 1;  // constant in the target N = C (log log M)^(1/(beta-1) - eps)
    Overrides overrides;
    std::vector<Rational> targets;
    std::size_t budget = sunits::kDefaultElementBudget;

    void validate() const;
};

struct TargetResult {
    Rational z;
    harmonics::Lemma8Result lemma8;
    BigInt q_x;            // witness in Sigma(M2) for x
    unsigned u = 0;        // q* = a^u b^v
    unsigned v = 0;
    BigInt q_star;
    Rational error;        // ||q* A/Q - z||
    Rational exact_bound;  // err8 + b^w / a^s
    double reference_bound = 0;  // 1/H + a^(-s/2)
    bool reference_bound_holds = false;
    bool within_budget = false;  // q* <= floor(Q^(1+delta))
};

struct BudgetCheck {
    std::optional<BigInt> lhs;  // M1 a^(n-s) b^(a^l); absent when too large to form
    BigInt rhs;                 // floor(Q^(1+delta))
    bool pass = false;
    bool b_power_ok = false;    // b^(a^l) <= a^(s/2)
};

struct PipelineReport {
    PipelineConfig config;
    BigInt M;
    BigInt M1;
    netgen::NetReport net;
    unsigned n = 0;
    BigInt N;
    double n_target = 0;  // C (log log M)^(1/(beta-1) - eps), reported only
    std::size_t X_n = 0;
    netgen::Lemma2Record lemma2;
    unsigned l = 0;
    double l_raw = 0;        // log_a(n ln a / (2 ln b))
    bool l_clamped = false;
    digits::SearchResult search;
    BigInt M2;
    digits::YSet yset;
    std::map<std::uint64_t, BigInt> witnesses;  // x -> smallest q in Sigma(M2)
    double H = 2;
    harmonics::SubgroupDescriptor subgroup;
    BudgetCheck budget;
    std::vector<TargetResult> targets;
};

/// Full construction for alpha = A/Q. Advisory bounds are flagged, not
/// enforced; exact structural facts throw on failure.
PipelineReport run_theorem1(const PipelineConfig& cfg);

enum class SolveMode { brute, pipeline };

struct SolveResult {
    sunits::SUnit q;
    RationalInterval error;  // ||q alpha - beta||, a point when exact
    SolveMode mode = SolveMode::brute;
    bool fallback = false;   // pipeline requested but brute answer returned
    std::string fallback_reason;
    std::optional<alpha::DirichletPair> anchor;
    std::optional<PipelineReport> report;
    std::optional<RationalInterval> brute_error;  // oracle value in pipeline mode
};

/// ||q alpha - beta|| at the given precision.
RationalInterval approximation_error(const BigInt& q, const alpha::RealSpec& x, const alpha::RealSpec& beta,
                                     unsigned long bits);

/// Minimum of ||q alpha - beta|| over Sigma(N); ties go to the smaller q.
SolveResult brute_force_best(const sunits::SUnitParams& params, const alpha::RealSpec& x,
                             const alpha::RealSpec& beta, const BigInt& N,
                             std::size_t budget = sunits::kDefaultElementBudget);

struct SolveOptions {
    double delta = 1;
    double eps = 0.05;
    std::size_t budget = sunits::kDefaultElementBudget;
};

SolveResult solve_inhomogeneous(const sunits::SUnitParams& params, const alpha::RealSpec& x,
                                const alpha::RealSpec& beta, const BigInt& N, SolveMode mode,
                                const SolveOptions& options = {});

/// 1 / (log log log x)^(1/8 - eps) when log log log x > 1.
std::optional<double> triple_log_bound(double log_x, double eps);

struct UniformReport {
    bool violated = false;
    BigInt violating_q;
    double Psi_N = 0;
    std::optional<alpha::DirichletPair> anchor;
    bool Psi_le_Q = false;
    std::optional<PipelineReport> report;
    std::optional<std::string> pipeline_error;
    Rational dispersion;     // of Sigma_{A/Q}(floor(Q^(1+delta)))
    std::size_t cloud_size = 0;
    std::optional<double> reference_bound;
    bool vacuous = true;
};

UniformReport solve_uniform(const sunits::SUnitParams& params, const alpha::RealSpec& x,
                            const alpha::PsiSpec& psi, const BigInt& N, double delta, double eps,
                            std::size_t budget = sunits::kDefaultElementBudget);

struct DensityReport {
    BigInt Q;
    BigInt bound;  // floor(Q^exponent)
    std::size_t count = 0;
    Rational dispersion;
    std::optional<double> reference_bound;
    bool vacuous = true;
};

DensityReport measure_density(const sunits::SUnitParams& params, const circle::Angle& x, double exponent,
                              double eps = 0.05, std::size_t budget = sunits::kDefaultElementBudget);

}  // namespace furst::pipeline

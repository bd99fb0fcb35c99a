// SPDX-License-Identifier: MIT
//
// Coefficient-ball large deviations: Lambda partition, closed-form rate
// infimum by shrinkage, exact small-noise ball probabilities as Gaussian
// products with certified truncation tails, Monte Carlo cross-checks, and
// the exponential-tightness compacts with their closed-form bound.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schilder/ciesielski.hpp"
#include "schilder/qwiener.hpp"
#include "schilder/spectrum.hpp"
#include "schilder/types.hpp"

namespace schilder {

// Component-sup ball around the scaled coefficients of the center:
// membership means sup_{k,n} |scaled_G(n,k) - center(n,k)| < delta.
struct BallSpec {
    CoeffMatrix center;
    double delta = 0.1;
    Spectrum spectrum;

    BallSpec(CoeffMatrix c, double d, Spectrum s);
};

enum class LambdaClass : std::uint8_t { L1, L2, L3, L4 };

struct LambdaPartition {
    std::size_t count = 0;     // N
    std::size_t channels = 0;  // K
    std::vector<LambdaClass> classes;          // n-major, N x K
    std::size_t counts[4] = {0, 0, 0, 0};
    std::size_t outside_l3 = 0;  // |union_k (Lambda3^k)^c| at truncation

    [[nodiscard]] LambdaClass at(std::size_t n, std::size_t k) const {
        return classes[n * channels + k];
    }
};

LambdaPartition classify(const BallSpec& ball);

struct BallInfimum {
    double value = 0.0;  // may be +inf (zero eigenvalue carrying shrunk mass)
    Matrix shrunk;       // soft-threshold of the center by delta
};

// inf over the ball of the rate: sum over Lambda1 of
// shrunk^2 / (2 c_n^2(alpha) lambda_k).
BallInfimum ball_infimum(const BallSpec& ball);

struct LogProb {
    double logp = 0.0;        // log of the truncated product; may be -inf
    double tail_bound = 0.0;  // upper bound on |log of the omitted factors|
};

// logp = sum_{k<K,n<N} log P(c_n sqrt(eps lambda_k) Z in (F-delta, F+delta)),
// in log space. The omitted factors (n >= N, and k >= K under a decay law)
// are all >= 1 - 2 Qbar(delta / (c_n sqrt(eps lambda_k))), summed level by
// level until underflow; +inf means the tail cannot be certified.
LogProb exact_log_prob(const BallSpec& ball, double eps);

struct McEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t paths = 0;
};

// Hit fraction of sup_{k,n} |sqrt(eps) scaled - center| < delta over cfg.paths
// samples. Throws FeasibilityError when the exact pre-estimate puts the
// expected hit count below min_expected_hits.
inline constexpr double kMcMinExpectedHits = 25.0;
McEstimate mc_prob(const BallSpec& ball, double eps, const SimConfig& cfg,
                   exec::Mode mode = exec::Mode::parallel);

struct LdpPoint {
    double eps = 0.0;
    double logp = 0.0;
    double tail_bound = 0.0;
    double eps_logp = 0.0;
    std::optional<McEstimate> mc;
    std::string mc_note;  // refusal reason when MC was requested but skipped
};

struct LdpCurve {
    double target = 0.0;  // -inf over the ball of the rate
    std::vector<LdpPoint> points;
};

// eps_grid must be strictly decreasing. MC is attempted for eps >= mc_upto
// when with_mc is set and recorded as null (with the reason) where it
// refuses.
LdpCurve ldp_curve(const BallSpec& ball, std::span<const double> eps_grid,
                   bool with_mc, double mc_upto, const SimConfig& cfg);

// Divergent sequence (c_k) for the tightness ellipsoids.
struct DivergentSeq {
    enum class Kind { geometric, power };
    Kind kind = Kind::geometric;
    double growth = 1.4142135623730951;  // geometric: c_k = growth^k
    double exponent = 1.0;               // power: c_k = (k+1)^s

    [[nodiscard]] double value(std::size_t k) const;
};

// Product compact in sequence space: row n of the scaled coefficients must
// satisfy ||row|| <= radius[n] and sum_k (row_k / (c_n b_k))^2 <= a'_n.
struct TightSet {
    double a = 1.0;
    double alpha = 0.4;
    double lambda_bar = 0.0;   // scale in the radius sqrt(a(n+1)/lambda_bar)
    double beta = 0.0;         // ellipsoid scale, 1/lambda(Q~)
    double c_q = 0.0;          // concentration constant of Q
    double c_qtilde = 0.0;     // concentration constant of Q~ = diag(c_k lambda_k)
    double sum_c_lambda = 0.0; // trace of Q~ under the decay law
    std::vector<double> radius;           // r_n = c_n(alpha) sqrt(a(n+1)/lambda_bar)
    std::vector<double> b_weights;        // b_k = sqrt(beta / c_k)
    std::vector<double> ellipsoid_bound;  // a'_n = (n+1) a + log c_qtilde

    // (1 + c_q) e^{-a/eps} / (1 - e^{-a/eps}); vacuous when >= 1.
    [[nodiscard]] double bound(double eps) const;
    [[nodiscard]] bool vacuous(double eps) const { return !(bound(eps) < 1.0); }
};

// Builds the compact for target decay rate a. Validates that sum c_k lambda_k
// converges under the spectrum's decay law. lambda_bar := lambda(Q) =
// 1/(4 lambda_max) from the documented concentration bound
// P(||Z|| >= t) <= exp(-(t - sqrt(trace))^2 / (2 lambda_max)).
TightSet tight_build(double a, const Spectrum& spec, const DivergentSeq& seq,
                     HolderExponent alpha, std::size_t rows, std::size_t channels);

struct TightPoint {
    double eps = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double bound = 0.0;
    bool vacuous = false;
    bool pass = true;  // estimate <= bound + 3 se (always true when vacuous)
    std::uint64_t outside = 0;
};

struct TightReport {
    std::vector<TightPoint> points;
};

TightReport tight_check(const TightSet& set, std::span<const double> eps_grid,
                        const SimConfig& cfg, exec::Mode mode = exec::Mode::parallel);

}  // namespace schilder

// SPDX-License-Identifier: MIT

#include "schilder/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "schilder/counter_rng.hpp"
#include "schilder/dyadic_basis.hpp"
#include "schilder/gaussian.hpp"

namespace schilder {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

BallSpec::BallSpec(CoeffMatrix c, double d, Spectrum s)
    : center(std::move(c)), delta(d), spectrum(std::move(s)) {
    if (!(delta > 0.0)) throw ConfigError("ball radius delta must be positive");
    if (center.channels != spectrum.channels())
        throw ConfigError("ball center channels do not match the spectrum");
    HolderExponent a(center.alpha);
    a.require_ldp();
}

LambdaPartition classify(const BallSpec& ball) {
    LambdaPartition part;
    part.count = ball.center.count();
    part.channels = ball.center.channels;
    part.classes.resize(part.count * part.channels);
    const double delta = ball.delta;
    for (std::size_t n = 0; n < part.count; ++n) {
        for (std::size_t k = 0; k < part.channels; ++k) {
            const double f = std::fabs(ball.center.scaled(n, k));
            LambdaClass c;
            if (f > delta)
                c = LambdaClass::L1;
            else if (f == delta)
                c = LambdaClass::L2;
            else if (f <= 0.5 * delta)
                c = LambdaClass::L3;
            else
                c = LambdaClass::L4;
            part.classes[n * part.channels + k] = c;
            ++part.counts[static_cast<std::size_t>(c)];
        }
    }
    part.outside_l3 = part.counts[0] + part.counts[1] + part.counts[3];
    return part;
}

BallInfimum ball_infimum(const BallSpec& ball) {
    const std::size_t N = ball.center.count();
    const std::size_t K = ball.center.channels;
    const HolderExponent alpha(ball.center.alpha);
    BallInfimum out;
    out.shrunk = Matrix(N, K);
    for (std::size_t n = 0; n < N; ++n) {
        const double c = weight(n, alpha);
        const double denom_base = 2.0 * c * c;
        for (std::size_t k = 0; k < K; ++k) {
            const double f = ball.center.scaled(n, k);
            const double mag = std::fabs(f) - ball.delta;
            if (mag <= 0.0) continue;  // soft threshold: 0 is in the interval
            const double shrunk = std::copysign(mag, f);
            out.shrunk(n, k) = shrunk;
            const double lambda = ball.spectrum.lambda(k);
            if (lambda == 0.0) {
                out.value = kInf;
                continue;
            }
            out.value += shrunk * shrunk / (denom_base * lambda);
        }
    }
    return out;
}

namespace {

// -log(1 - 2 Qbar(u)): magnitude of the log of one omitted (zero-centered)
// factor. Finite for u > 0.
double omitted_factor_log(double u) {
    const double q = erfc_cody(u / 1.4142135623730950488);
    if (q >= 1.0) return kInf;
    return -std::log1p(-q);
}

// Tail over the omitted coefficients for one channel: levels j0.. (all
// shifts at a level share c_j), plus the n = 0 factor when include_n0.
// Terms grow like 2^j until u_j = delta / (c_j sqrt(eps lambda)) takes off,
// then die double-exponentially; +inf when no certification is reachable.
double channel_tail(double delta, double eps_lambda, HolderExponent alpha,
                    std::size_t level0, bool include_n0) {
    const double root = std::sqrt(eps_lambda);
    double total = include_n0 ? omitted_factor_log(delta / root) : 0.0;
    constexpr std::size_t kMaxLevels = 4000;
    for (std::size_t j = level0; j < level0 + kMaxLevels; ++j) {
        const double u = delta / (weight_at_level(j, alpha) * root);
        const double term = omitted_factor_log(u);
        if (term == 0.0) return total;  // underflow: all later factors are 1
        total += std::ldexp(term, static_cast<int>(j));  // 2^j indices per level
        if (!std::isfinite(total)) return kInf;
    }
    return kInf;  // did not converge within the level budget
}

}  // namespace

LogProb exact_log_prob(const BallSpec& ball, double eps) {
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    const std::size_t N = ball.center.count();
    const std::size_t K = ball.center.channels;
    const HolderExponent alpha(ball.center.alpha);
    const double delta = ball.delta;

    LogProb out;
    for (std::size_t n = 0; n < N && out.logp > -kInf; ++n) {
        const double c = weight(n, alpha);
        for (std::size_t k = 0; k < K; ++k) {
            const double f = ball.center.scaled(n, k);
            const double sd = c * std::sqrt(eps * ball.spectrum.lambda(k));
            if (sd == 0.0) {
                // Degenerate coordinate: the draw is exactly 0.
                if (std::fabs(f) < delta) continue;
                out.logp = -kInf;
                break;
            }
            out.logp += log_norm_interval((f - delta) / sd, (f + delta) / sd);
        }
    }

    // Certified bound on the omitted factors of the infinite product.
    const std::size_t level0 = ball.center.level();
    for (std::size_t k = 0; k < K; ++k) {
        const double lambda = ball.spectrum.lambda(k);
        if (lambda == 0.0) continue;
        out.tail_bound += channel_tail(delta, eps * lambda, alpha, level0, false);
    }
    if (ball.spectrum.has_decay_law()) {
        double prev_total = out.tail_bound;
        for (std::size_t k = K; k < K + 100000; ++k) {
            const double lambda = ball.spectrum.law_lambda(k);
            if (lambda <= 0.0) break;
            const double col = channel_tail(delta, eps * lambda, alpha, 0, true);
            out.tail_bound += col;
            if (!std::isfinite(out.tail_bound)) break;
            if (col <= prev_total * 1e-17) break;  // geometric column decay hit epsilon
            prev_total = out.tail_bound;
        }
    }
    return out;
}

McEstimate mc_prob(const BallSpec& ball, double eps, const SimConfig& cfg,
                   exec::Mode mode) {
    cfg.validate();
    if (cfg.channels != ball.center.channels || cfg.coeffs() != ball.center.count())
        throw ConfigError("mc_prob: SimConfig truncation must match the ball");
    const double pre = exact_log_prob(ball, eps).logp;
    const double expected = static_cast<double>(cfg.paths) * std::exp(pre);
    if (!(expected >= kMcMinExpectedHits)) {
        std::ostringstream msg;
        msg << "expected hit count " << expected << " at M = " << cfg.paths
            << " is below " << kMcMinExpectedHits << "; use exact method";
        throw FeasibilityError(msg.str());
    }

    const std::size_t N = ball.center.count();
    const std::size_t K = ball.center.channels;
    const double root_eps = std::sqrt(eps);
    const HolderExponent alpha(ball.center.alpha);
    std::vector<double> scale(N * K);  // sqrt(eps) c_n sqrt(lambda_k)
    for (std::size_t n = 0; n < N; ++n) {
        const double c = weight(n, alpha);
        for (std::size_t k = 0; k < K; ++k)
            scale[n * K + k] = root_eps * c * std::sqrt(ball.spectrum.lambda(k));
    }

    const auto hit = [&](std::uint64_t i) -> bool {
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t k = 0; k < K; ++k) {
                const double draw = scale[n * K + k] *
                                    counter_normal(cfg.seed, i, static_cast<std::uint32_t>(n),
                                                   static_cast<std::uint32_t>(k));
                if (!(std::fabs(draw - ball.center.scaled(n, k)) < ball.delta)) return false;
            }
        return true;
    };

    const std::size_t M = cfg.paths;
    std::uint64_t hits = 0;
    if (mode == exec::Mode::parallel) {
#pragma omp parallel for reduction(+ : hits) schedule(static)
        for (std::size_t i = 0; i < M; ++i) hits += hit(i) ? 1 : 0;
    } else {
        for (std::size_t i = 0; i < M; ++i) hits += hit(i) ? 1 : 0;
    }

    McEstimate est;
    est.hits = hits;
    est.paths = M;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(M);
    est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(M));
    return est;
}

LdpCurve ldp_curve(const BallSpec& ball, std::span<const double> eps_grid,
                   bool with_mc, double mc_upto, const SimConfig& cfg) {
    for (std::size_t i = 0; i + 1 < eps_grid.size(); ++i)
        if (!(eps_grid[i] > eps_grid[i + 1]))
            throw ConfigError("eps grid must be strictly decreasing");
    LdpCurve curve;
    curve.target = -ball_infimum(ball).value;
    curve.points.reserve(eps_grid.size());
    for (double eps : eps_grid) {
        LdpPoint pt;
        pt.eps = eps;
        const LogProb lp = exact_log_prob(ball, eps);
        pt.logp = lp.logp;
        pt.tail_bound = lp.tail_bound;
        pt.eps_logp = eps * lp.logp;
        if (with_mc && eps >= mc_upto) {
            try {
                pt.mc = mc_prob(ball, eps, cfg);
            } catch (const FeasibilityError& e) {
                pt.mc_note = e.what();
            }
        }
        curve.points.push_back(std::move(pt));
    }
    return curve;
}

double DivergentSeq::value(std::size_t k) const {
    if (kind == Kind::geometric) return std::pow(growth, static_cast<double>(k));
    return std::pow(static_cast<double>(k + 1), exponent);
}

double TightSet::bound(double eps) const {
    const double x = std::exp(-a / eps);
    return (1.0 + c_q) * x / (1.0 - x);
}

TightSet tight_build(double a, const Spectrum& spec, const DivergentSeq& seq,
                     HolderExponent alpha, std::size_t rows, std::size_t channels) {
    if (!(a > 0.0)) throw ConfigError("tightness rate a must be positive");
    if (channels != spec.channels())
        throw ConfigError("tight_build channel count does not match the spectrum");

    // Convergence of sum c_k lambda_k under the decay law.
    double sum_c_lambda;
    double max_c_lambda;
    switch (spec.decay().kind) {
        case DecaySpec::Kind::geometric: {
            if (seq.kind != DivergentSeq::Kind::geometric)
                break;
            const double rho = seq.growth * spec.decay().ratio;
            if (!(rho < 1.0))
                throw ConfigError("sum c_k lambda_k diverges: growth * ratio >= 1");
            break;
        }
        case DecaySpec::Kind::power: {
            const double p = spec.decay().exponent;
            if (seq.kind == DivergentSeq::Kind::power && !(p - seq.exponent > 1.0))
                throw ConfigError("sum c_k lambda_k diverges: p - s must exceed 1");
            if (seq.kind == DivergentSeq::Kind::geometric)
                throw ConfigError("sum c_k lambda_k diverges: geometric growth beats power decay");
            break;
        }
        case DecaySpec::Kind::explicit_list:
            break;  // finite model, any (c_k)
    }
    if (spec.decay().kind == DecaySpec::Kind::power &&
        seq.kind == DivergentSeq::Kind::power) {
        // lambda0 zeta(p - s): direct sum plus an integral tail bound.
        const double nu = spec.decay().exponent - seq.exponent;
        double s = 0.0;
        for (std::size_t k = 1; k <= 100000; ++k) s += std::pow(static_cast<double>(k), -nu);
        s += std::pow(100000.5, 1.0 - nu) / (nu - 1.0);
        sum_c_lambda = spec.decay().lambda0 * s;
        max_c_lambda = spec.decay().lambda0;  // (k+1)^{s-p} is decreasing
    } else {
        // Geometric factors somewhere in the product: terms decay at least
        // geometrically, so the direct sum converges quickly.
        double s = 0.0, mx = 0.0;
        const std::size_t k_end = spec.has_decay_law() ? 100000 : spec.channels();
        for (std::size_t k = 0; k < k_end; ++k) {
            const double term = seq.value(k) * spec.law_lambda(k);
            s += term;
            mx = std::max(mx, term);
            if (k >= spec.channels() && term <= s * 1e-18) break;
        }
        sum_c_lambda = s;
        max_c_lambda = mx;
    }

    const double trace = spec.has_decay_law() ? spec.law_trace() : spec.trace();
    TightSet set;
    set.a = a;
    set.alpha = alpha.value;
    // Concentration P(||Z|| >= sqrt(a')) <= c e^{-lambda a'} with
    // c = exp(trace/(2 lambda_max)), lambda = 1/(4 lambda_max).
    set.c_q = std::exp(trace / (2.0 * spec.lambda_max()));
    set.lambda_bar = 1.0 / (4.0 * spec.lambda_max());
    set.c_qtilde = std::exp(sum_c_lambda / (2.0 * max_c_lambda));
    set.beta = 1.0 / (1.0 / (4.0 * max_c_lambda));  // 1/lambda(Q~) = 4 max c_k lambda_k
    set.sum_c_lambda = sum_c_lambda;

    set.radius.resize(rows);
    set.ellipsoid_bound.resize(rows);
    for (std::size_t n = 0; n < rows; ++n) {
        set.radius[n] = weight(n, alpha) *
                        std::sqrt(a * static_cast<double>(n + 1) / set.lambda_bar);
        set.ellipsoid_bound[n] = static_cast<double>(n + 1) * a + std::log(set.c_qtilde);
    }
    set.b_weights.resize(channels);
    for (std::size_t k = 0; k < channels; ++k)
        set.b_weights[k] = std::sqrt(set.beta / seq.value(k));
    return set;
}

TightReport tight_check(const TightSet& set, std::span<const double> eps_grid,
                        const SimConfig& cfg, exec::Mode mode) {
    cfg.validate();
    const std::size_t N = set.radius.size();
    const std::size_t K = set.b_weights.size();
    if (K != cfg.channels || N != cfg.coeffs())
        throw ConfigError("tight_check: SimConfig truncation must match the set");

    const HolderExponent alpha(set.alpha);
    std::vector<double> root_lambda(K);
    for (std::size_t k = 0; k < K; ++k) root_lambda[k] = std::sqrt(cfg.spectrum.lambda(k));
    std::vector<double> cks(K);  // c_k = beta / b_k^2
    for (std::size_t k = 0; k < K; ++k) cks[k] = set.beta / (set.b_weights[k] * set.b_weights[k]);

    TightReport report;
    for (double eps : eps_grid) {
        // Row n of sqrt(eps) W fails if it leaves the ball or the ellipsoid:
        //   eps ||Z_n||^2 > a(n+1)/lambda_bar   or   eps sum_k c_k Z_{n,k}^2 > beta a'_n.
        const auto outside = [&](std::uint64_t i) -> bool {
            for (std::size_t n = 0; n < N; ++n) {
                double norm_sq = 0.0, ell = 0.0;
                for (std::size_t k = 0; k < K; ++k) {
                    const double z = root_lambda[k] *
                                     counter_normal(cfg.seed, i, static_cast<std::uint32_t>(n),
                                                    static_cast<std::uint32_t>(k));
                    norm_sq += z * z;
                    ell += cks[k] * z * z;
                }
                const double ball_cap = set.a * static_cast<double>(n + 1) / set.lambda_bar;
                if (eps * norm_sq > ball_cap) return true;
                if (eps * ell > set.beta * set.ellipsoid_bound[n]) return true;
            }
            return false;
        };

        const std::size_t M = cfg.paths;
        std::uint64_t count = 0;
        if (mode == exec::Mode::parallel) {
#pragma omp parallel for reduction(+ : count) schedule(static)
            for (std::size_t i = 0; i < M; ++i) count += outside(i) ? 1 : 0;
        } else {
            for (std::size_t i = 0; i < M; ++i) count += outside(i) ? 1 : 0;
        }

        TightPoint pt;
        pt.eps = eps;
        pt.outside = count;
        pt.estimate = static_cast<double>(count) / static_cast<double>(M);
        pt.std_error =
            std::sqrt(pt.estimate * (1.0 - pt.estimate) / static_cast<double>(M));
        pt.bound = set.bound(eps);
        pt.vacuous = set.vacuous(eps);
        pt.pass = pt.vacuous || pt.estimate <= pt.bound + 3.0 * pt.std_error;
        report.points.push_back(pt);
    }
    return report;
}

}  // namespace schilder

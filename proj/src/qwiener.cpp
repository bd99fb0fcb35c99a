// SPDX-License-Identifier: MIT

#include "schilder/qwiener.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "schilder/counter_rng.hpp"

namespace schilder {

void SimConfig::validate() const {
    if (channels != spectrum.channels())
        throw ConfigError("SimConfig channels do not match the spectrum");
    if (coeffs() > (std::size_t{1} << level))
        throw ConfigError("coefficient truncation N must be <= 2^J");
    if (paths < 1) throw ConfigError("path count M must be >= 1");
    HolderExponent probe(alpha);  // range check
    (void)probe;
}

Matrix gaussian_draws(const SimConfig& cfg, std::uint64_t path_index) {
    const std::size_t N = cfg.coeffs();
    Matrix normals(N, cfg.channels);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t k = 0; k < cfg.channels; ++k)
            normals(n, k) = counter_normal(cfg.seed, path_index,
                                           static_cast<std::uint32_t>(n),
                                           static_cast<std::uint32_t>(k));
    return normals;
}

CoeffMatrix sample_coeffs(const SimConfig& cfg, std::uint64_t path_index) {
    const std::size_t N = cfg.coeffs();
    Matrix raw(N, cfg.channels);
    std::vector<double> root(cfg.channels);
    for (std::size_t k = 0; k < cfg.channels; ++k) root[k] = std::sqrt(cfg.spectrum.lambda(k));
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t k = 0; k < cfg.channels; ++k)
            raw(n, k) = root[k] * counter_normal(cfg.seed, path_index,
                                                 static_cast<std::uint32_t>(n),
                                                 static_cast<std::uint32_t>(k));
    return CoeffMatrix::from_raw(std::move(raw), HolderExponent(cfg.alpha));
}

DyadicPath sample_path(const SimConfig& cfg, std::uint64_t path_index) {
    return synthesize(sample_coeffs(cfg, path_index).raw, cfg.level);
}

CovReport covariance_check(const SimConfig& cfg, std::span<const double> v,
                           std::span<const double> w, double s, double t,
                           exec::Mode mode) {
    cfg.validate();
    if (v.size() != cfg.channels || w.size() != cfg.channels)
        throw std::invalid_argument("covariance_check: vector length must equal K");
    if (cfg.paths < 100) throw ConfigError("covariance_check needs M >= 100");
    const std::size_t grid = std::size_t{1} << cfg.level;
    const auto grid_index = [&](double u) {
        const double scaled = u * static_cast<double>(grid);
        const auto j = static_cast<std::size_t>(std::llround(scaled));
        if (std::abs(scaled - static_cast<double>(j)) > 1e-12 || u < 0.0 || u > 1.0)
            throw std::invalid_argument("covariance_check: s,t must be level-J grid points");
        return j;
    };
    const std::size_t jt = grid_index(t);
    const std::size_t js = grid_index(s);

    const std::size_t M = cfg.paths;
    std::vector<double> x(M), y(M);
    const auto fill = [&](std::size_t i) {
        const DyadicPath path = sample_path(cfg, i);
        double xv = 0.0, yv = 0.0;
        for (std::size_t k = 0; k < cfg.channels; ++k) {
            xv += v[k] * path.samples(jt, k);
            yv += w[k] * path.samples(js, k);
        }
        x[i] = xv;
        y[i] = yv;
    };
    if (mode == exec::Mode::parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < M; ++i) fill(i);
    } else {
        for (std::size_t i = 0; i < M; ++i) fill(i);
    }

    // Serial reduction keeps the estimate bitwise identical across worker counts.
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(M);
    my /= static_cast<double>(M);
    double cov = 0.0, var_prod = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const double p = (x[i] - mx) * (y[i] - my);
        cov += p;
        var_prod += p * p;
    }
    cov /= static_cast<double>(M - 1);
    var_prod = var_prod / static_cast<double>(M) - cov * cov;

    double target = 0.0;
    for (std::size_t k = 0; k < cfg.channels; ++k)
        target += cfg.spectrum.lambda(k) * v[k] * w[k];
    target *= std::min(s, t);

    return CovReport{cov, target, std::sqrt(std::max(var_prod, 0.0) / static_cast<double>(M)),
                     M};
}

double log_bound_stat(const SimConfig& cfg, exec::Mode mode) {
    cfg.validate();
    const std::size_t N = cfg.coeffs();
    const std::size_t M = cfg.paths;
    const std::size_t K = cfg.channels;
    std::vector<double> lambdas = cfg.spectrum.lambdas();

    const auto path_max = [&](std::size_t i) {
        double best = 0.0;
        for (std::size_t n = 2; n < N; ++n) {
            double norm_sq = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                const double z = std::sqrt(lambdas[k]) *
                                 counter_normal(cfg.seed, i, static_cast<std::uint32_t>(n),
                                                static_cast<std::uint32_t>(k));
                norm_sq += z * z;
            }
            best = std::max(best, std::sqrt(norm_sq) /
                                      std::sqrt(std::log(static_cast<double>(n))));
        }
        return best;
    };

    double stat = 0.0;
    if (mode == exec::Mode::parallel) {
#pragma omp parallel for reduction(max : stat) schedule(static)
        for (std::size_t i = 0; i < M; ++i) stat = std::max(stat, path_max(i));
    } else {
        for (std::size_t i = 0; i < M; ++i) stat = std::max(stat, path_max(i));
    }
    return stat;
}

}  // namespace schilder

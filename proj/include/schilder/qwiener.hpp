// SPDX-License-Identifier: MIT
//
// Q-Wiener sampling by the double Schauder series under a counter-based
// randomness contract, plus the statistical oracles used to validate it.
#pragma once

#include <cstdint>
#include <span>

#include "schilder/ciesielski.hpp"
#include "schilder/spectrum.hpp"
#include "schilder/types.hpp"

namespace schilder {

struct SimConfig {
    Spectrum spectrum;
    std::size_t level = 8;        // J
    std::size_t coeff_count = 0;  // N; 0 means the default 2^J
    std::size_t channels = 4;     // K
    std::uint64_t seed = 42;
    std::size_t paths = 100000;   // M
    double alpha = 0.4;

    [[nodiscard]] std::size_t coeffs() const {
        return coeff_count == 0 ? (std::size_t{1} << level) : coeff_count;
    }
    void validate() const;
};

// N x K standard normals N_{n,k}, a pure function of (seed, path_index).
Matrix gaussian_draws(const SimConfig& cfg, std::uint64_t path_index);

// raw(n,k) = sqrt(lambda_k) N_{n,k}; scaled = c_n(alpha) raw.
CoeffMatrix sample_coeffs(const SimConfig& cfg, std::uint64_t path_index);

// W(t_j) = sum_{n<N} phi_n(t_j) Z_n on the level-J grid; identical to
// inverse(sample_coeffs(cfg, i).raw).
DyadicPath sample_path(const SimConfig& cfg, std::uint64_t path_index);

struct CovReport {
    double estimate = 0.0;
    double target = 0.0;
    double std_error = 0.0;
    std::size_t paths = 0;
};

// Monte Carlo check of cov(<v,W_t>, <w,W_s>) against (t ^ s) <v, Q w>.
// Grid s,t; per-path products are accumulated into a path-indexed buffer
// and reduced serially, so the result is worker-count independent.
CovReport covariance_check(const SimConfig& cfg, std::span<const double> v,
                           std::span<const double> w, double s, double t,
                           exec::Mode mode = exec::Mode::parallel);

// sup over the run of ||Z_n||_H / sqrt(log n), n >= 2 — reported, not
// asserted against theory (the a.s. bound has no explicit constant).
double log_bound_stat(const SimConfig& cfg, exec::Mode mode = exec::Mode::parallel);

}  // namespace schilder

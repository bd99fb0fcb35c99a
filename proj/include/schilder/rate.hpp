// SPDX-License-Identifier: MIT
//
// Cameron-Martin rate functionals: scalar rate in coefficient and
// finite-difference form, and the channel-decomposed H-valued rate.
#pragma once

#include <span>
#include <vector>

#include "schilder/ciesielski.hpp"
#include "schilder/spectrum.hpp"

namespace schilder {

// (1/2) sum a_n^2 over raw Haar coefficients (Parseval form of
// (1/2) int |f'|^2 for the level-J interpolant).
double rate_scalar_coeffs(std::span<const double> raw_coeffs);

// (1/2) sum_j (f(t_{j+1}) - f(t_j))^2 2^J, exact for piecewise-linear f.
double rate_scalar_fd(std::span<const double> samples, std::size_t level);

struct RateValue {
    double value = 0.0;                // may be +inf
    std::vector<double> per_channel;   // (1/lambda_k) * scalar rate of channel k

    [[nodiscard]] bool finite() const;
};

// I(F) = sum_k (1/lambda_k) Itilde(<F,e_k>) with c/0 = inf, 0/0 = 0.
RateValue rate_total(const CoeffMatrix& coeffs, const Spectrum& spec);

}  // namespace schilder

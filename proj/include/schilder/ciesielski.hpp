// SPDX-License-Identifier: MIT
//
// Forward and inverse Ciesielski transforms for multichannel paths on dyadic
// grids, the two sequence norms, and the dyadic Holder seminorm estimator.
#pragma once

#include <cstddef>

#include "schilder/types.hpp"

namespace schilder {

// Path sampled on the level-J dyadic grid: (2^J + 1) x K, row j holds
// <F(j/2^J), e_k>. Paths start at 0 per channel.
struct DyadicPath {
    std::size_t level = 0;
    std::size_t channels = 1;
    Matrix samples;

    DyadicPath() = default;
    DyadicPath(std::size_t J, std::size_t K, Matrix data);
    static DyadicPath zeros(std::size_t J, std::size_t K);

    [[nodiscard]] std::size_t points() const { return (std::size_t{1} << level) + 1; }
};

// Haar coefficients of a path, raw and alpha-scaled: N x K with N = 2^J.
// scaled(n,k) = c_n(alpha) raw(n,k) by construction.
struct CoeffMatrix {
    std::size_t channels = 1;
    double alpha = 0.4;
    Matrix raw;
    Matrix scaled;

    static CoeffMatrix from_raw(Matrix raw, HolderExponent alpha);
    static CoeffMatrix from_scaled(Matrix scaled, HolderExponent alpha);

    [[nodiscard]] std::size_t count() const { return raw.rows(); }
    [[nodiscard]] std::size_t level() const;  // log2(N)
};

// raw(0,k) = F_k(1) - F_k(0); for n = 2^k + l < 2^J the second-difference
// formula sqrt(2^k)[2F(mid) - F(right) - F(left)], exact on the grid.
CoeffMatrix forward(const DyadicPath& path, HolderExponent alpha);

// Synthesizes sum_{n<N} raw(n,.) phi_n on the level-J_out grid by midpoint
// refinement (phi_{2^j+l} vanishes at all level-j grid points, so each level
// adds only the midpoint corrections). Exact for J_out >= log2(N).
DyadicPath inverse(const CoeffMatrix& coeffs, std::size_t J_out);
DyadicPath synthesize(const Matrix& raw, std::size_t J_out);

// sup_n of the Euclidean row norm of scaled, and sup over single entries.
double seq_norm_h(const CoeffMatrix& coeffs);
double seq_norm_comp(const CoeffMatrix& coeffs);

struct HolderEstimate {
    double value = 0.0;
    bool exhaustive = true;  // scan strategy actually used
};

// Exhaustive scans above this level cost O(4^J) pairs; beyond it the
// standard dyadic-pair restriction (level-j neighbours at distance 1 and 2,
// all levels j <= J) is used instead.
inline constexpr std::size_t kExhaustiveMaxLevel = 7;

// max over grid pairs s < t of ||F(t)-F(s)||_H / (t-s)^alpha.
HolderEstimate dyadic_holder(const DyadicPath& path, HolderExponent alpha);

// Scan internals, exposed for tests and the benchmark.
double holder_exhaustive(const DyadicPath& path, HolderExponent alpha,
                         exec::Mode mode = exec::Mode::parallel);
double holder_dyadic_pairs(const DyadicPath& path, HolderExponent alpha);

}  // namespace schilder

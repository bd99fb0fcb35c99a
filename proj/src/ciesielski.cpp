// SPDX-License-Identifier: MIT

#include "schilder/ciesielski.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "schilder/dyadic_basis.hpp"

namespace schilder {

DyadicPath::DyadicPath(std::size_t J, std::size_t K, Matrix data)
    : level(J), channels(K), samples(std::move(data)) {
    if (samples.rows() != points() || samples.cols() != K)
        throw std::invalid_argument("path sample matrix has the wrong shape");
    for (std::size_t k = 0; k < K; ++k)
        if (samples(0, k) != 0.0)
            throw std::invalid_argument("path must start at 0");
    for (double v : samples.data())
        if (!std::isfinite(v))
            throw std::invalid_argument("path samples must be finite");
}

DyadicPath DyadicPath::zeros(std::size_t J, std::size_t K) {
    return DyadicPath(J, K, Matrix((std::size_t{1} << J) + 1, K));
}

CoeffMatrix CoeffMatrix::from_raw(Matrix raw, HolderExponent alpha) {
    const std::size_t n = raw.rows();
    if (n == 0 || !std::has_single_bit(n))
        throw std::invalid_argument("coefficient count must be a power of two");
    CoeffMatrix out;
    out.channels = raw.cols();
    out.alpha = alpha.value;
    out.scaled = Matrix(n, raw.cols());
    for (std::size_t i = 0; i < n; ++i) {
        const double c = weight(i, alpha);
        for (std::size_t k = 0; k < raw.cols(); ++k) out.scaled(i, k) = c * raw(i, k);
    }
    out.raw = std::move(raw);
    return out;
}

CoeffMatrix CoeffMatrix::from_scaled(Matrix scaled, HolderExponent alpha) {
    const std::size_t n = scaled.rows();
    if (n == 0 || !std::has_single_bit(n))
        throw std::invalid_argument("coefficient count must be a power of two");
    CoeffMatrix out;
    out.channels = scaled.cols();
    out.alpha = alpha.value;
    out.raw = Matrix(n, scaled.cols());
    for (std::size_t i = 0; i < n; ++i) {
        const double c = weight(i, alpha);
        for (std::size_t k = 0; k < scaled.cols(); ++k) out.raw(i, k) = scaled(i, k) / c;
    }
    out.scaled = std::move(scaled);
    return out;
}

std::size_t CoeffMatrix::level() const { return std::bit_width(count()) - 1; }

CoeffMatrix forward(const DyadicPath& path, HolderExponent alpha) {
    const std::size_t J = path.level;
    const std::size_t N = std::size_t{1} << J;
    const std::size_t K = path.channels;
    Matrix raw(N, K);
    for (std::size_t k = 0; k < K; ++k)
        raw(0, k) = path.samples(path.points() - 1, k) - path.samples(0, k);
    for (std::size_t n = 1; n < N; ++n) {
        const auto [_, lev, shift] = split_index(n);
        // Grid indices of 2l/2^{k+1}, (2l+1)/2^{k+1}, (2l+2)/2^{k+1}.
        const std::size_t stride = std::size_t{1} << (J - lev - 1);
        const std::size_t left = 2 * shift * stride;
        const double scale = std::sqrt(std::ldexp(1.0, static_cast<int>(lev)));
        for (std::size_t k = 0; k < K; ++k) {
            raw(n, k) = scale * (2.0 * path.samples(left + stride, k) -
                                 path.samples(left + 2 * stride, k) -
                                 path.samples(left, k));
        }
    }
    return CoeffMatrix::from_raw(std::move(raw), alpha);
}

DyadicPath synthesize(const Matrix& raw, std::size_t J_out) {
    const std::size_t N = raw.rows();
    if (N == 0 || !std::has_single_bit(N))
        throw std::invalid_argument("coefficient count must be a power of two");
    const std::size_t J_in = std::bit_width(N) - 1;
    if (J_out < J_in)
        throw std::domain_error("output level too small for coefficient count");
    const std::size_t K = raw.cols();
    Matrix samples((std::size_t{1} << J_out) + 1, K);

    const std::size_t full = std::size_t{1} << J_out;
    for (std::size_t k = 0; k < K; ++k) samples(full, k) = raw(0, k);  // phi_0(1) raw_0

    // Level-by-level midpoint refinement: after level j the values at all
    // level-(j+1) grid points equal the full series there.
    for (std::size_t j = 0; j < J_out; ++j) {
        const std::size_t cells = std::size_t{1} << j;
        const std::size_t stride = std::size_t{1} << (J_out - j);
        const bool has_coeffs = j < J_in;
        const double peak = schauder_peak(j);
        for (std::size_t l = 0; l < cells; ++l) {
            const std::size_t left = l * stride;
            const std::size_t mid = left + stride / 2;
            for (std::size_t k = 0; k < K; ++k) {
                double v = 0.5 * (samples(left, k) + samples(left + stride, k));
                if (has_coeffs) v += raw(cells + l, k) * peak;
                samples(mid, k) = v;
            }
        }
    }
    return DyadicPath(J_out, K, std::move(samples));
}

DyadicPath inverse(const CoeffMatrix& coeffs, std::size_t J_out) {
    return synthesize(coeffs.raw, J_out);
}

double seq_norm_h(const CoeffMatrix& coeffs) {
    double best = 0.0;
    for (std::size_t n = 0; n < coeffs.count(); ++n) {
        double row = 0.0;
        for (std::size_t k = 0; k < coeffs.channels; ++k)
            row += coeffs.scaled(n, k) * coeffs.scaled(n, k);
        best = std::max(best, row);
    }
    return std::sqrt(best);
}

double seq_norm_comp(const CoeffMatrix& coeffs) {
    double best = 0.0;
    for (double v : coeffs.scaled.data()) best = std::max(best, std::fabs(v));
    return best;
}

namespace {

double pair_quotient(const DyadicPath& path, std::size_t i, std::size_t j,
                     double inv_denom) {
    double d = 0.0;
    for (std::size_t k = 0; k < path.channels; ++k) {
        const double diff = path.samples(j, k) - path.samples(i, k);
        d += diff * diff;
    }
    return std::sqrt(d) * inv_denom;
}

}  // namespace

double holder_exhaustive(const DyadicPath& path, HolderExponent alpha, exec::Mode mode) {
    const std::size_t pts = path.points();
    const double h = std::ldexp(1.0, -static_cast<int>(path.level));
    // Precompute (t-s)^-alpha per index gap; gaps are the only inputs.
    std::vector<double> inv_denom(pts);
    for (std::size_t g = 1; g < pts; ++g)
        inv_denom[g] = std::pow(static_cast<double>(g) * h, -alpha.value);

    double best = 0.0;
    if (mode == exec::Mode::parallel) {
#pragma omp parallel for reduction(max : best) schedule(static)
        for (std::size_t i = 0; i < pts - 1; ++i)
            for (std::size_t j = i + 1; j < pts; ++j)
                best = std::max(best, pair_quotient(path, i, j, inv_denom[j - i]));
    } else {
        for (std::size_t i = 0; i < pts - 1; ++i)
            for (std::size_t j = i + 1; j < pts; ++j)
                best = std::max(best, pair_quotient(path, i, j, inv_denom[j - i]));
    }
    return best;
}

double holder_dyadic_pairs(const DyadicPath& path, HolderExponent alpha) {
    const std::size_t J = path.level;
    double best = 0.0;
    for (std::size_t j = 0; j <= J; ++j) {
        const std::size_t stride = std::size_t{1} << (J - j);
        const std::size_t pts_j = (std::size_t{1} << j) + 1;
        const double cell = std::ldexp(1.0, -static_cast<int>(j));
        for (std::size_t gap : {std::size_t{1}, std::size_t{2}}) {
            if (gap >= pts_j) continue;
            const double inv_denom = std::pow(static_cast<double>(gap) * cell, -alpha.value);
            for (std::size_t i = 0; i + gap < pts_j; ++i)
                best = std::max(best,
                                pair_quotient(path, i * stride, (i + gap) * stride, inv_denom));
        }
    }
    return best;
}

HolderEstimate dyadic_holder(const DyadicPath& path, HolderExponent alpha) {
    if (path.level <= kExhaustiveMaxLevel)
        return {holder_exhaustive(path, alpha), true};
    return {holder_dyadic_pairs(path, alpha), false};
}

}  // namespace schilder

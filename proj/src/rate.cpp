// SPDX-License-Identifier: MIT

#include "schilder/rate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace schilder {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double rate_scalar_coeffs(std::span<const double> raw_coeffs) {
    double s = 0.0;
    for (double a : raw_coeffs) s += a * a;
    return 0.5 * s;
}

double rate_scalar_fd(std::span<const double> samples, std::size_t level) {
    if (samples.size() != (std::size_t{1} << level) + 1)
        throw std::invalid_argument("sample count does not match the level");
    const double inv_h = std::ldexp(1.0, static_cast<int>(level));
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < samples.size(); ++j) {
        const double d = samples[j + 1] - samples[j];
        s += d * d;
    }
    return 0.5 * s * inv_h;
}

bool RateValue::finite() const { return std::isfinite(value); }

RateValue rate_total(const CoeffMatrix& coeffs, const Spectrum& spec) {
    if (coeffs.channels != spec.channels())
        throw std::invalid_argument("rate_total: channel counts do not match");
    RateValue out;
    out.per_channel.resize(coeffs.channels);
    for (std::size_t k = 0; k < coeffs.channels; ++k) {
        double half_sq = 0.0;
        for (std::size_t n = 0; n < coeffs.count(); ++n)
            half_sq += coeffs.raw(n, k) * coeffs.raw(n, k);
        half_sq *= 0.5;
        double contrib;
        if (half_sq == 0.0)
            contrib = 0.0;  // 0/0 = 0
        else if (spec.lambda(k) == 0.0)
            contrib = kInf;  // c/0 = inf
        else
            contrib = half_sq / spec.lambda(k);
        out.per_channel[k] = contrib;
        out.value += contrib;
    }
    return out;
}

}  // namespace schilder

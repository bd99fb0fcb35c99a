// SPDX-License-Identifier: MIT

#include "schilder/dyadic_basis.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace schilder {

BasisIndex split_index(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("constant index has no dyadic decomposition");
    const std::size_t level = std::bit_width(n) - 1;
    return BasisIndex{n, level, n - (std::size_t{1} << level)};
}

namespace {

void check_unit_interval(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("t outside [0,1]");
}

}  // namespace

double haar_eval(std::size_t n, double t) {
    check_unit_interval(t);
    if (n == 0) return 1.0;
    const auto [_, k, l] = split_index(n);
    // Breakpoints 2l/2^{k+1}, (2l+1)/2^{k+1}, (2l+2)/2^{k+1} are exact dyadics.
    const double cell = std::ldexp(1.0, -static_cast<int>(k) - 1);
    const double a = 2.0 * static_cast<double>(l) * cell;
    const double mid = a + cell;
    const double b = mid + cell;
    const double height = std::sqrt(std::ldexp(1.0, static_cast<int>(k)));
    if (t >= a && t < mid) return height;
    if (t >= mid && t <= b) return -height;
    return 0.0;
}

double schauder_eval(std::size_t n, double t) {
    check_unit_interval(t);
    if (n == 0) return t;
    const auto [_, k, l] = split_index(n);
    const double cell = std::ldexp(1.0, -static_cast<int>(k) - 1);
    const double a = 2.0 * static_cast<double>(l) * cell;
    const double mid = a + cell;
    const double b = mid + cell;
    const double slope = std::sqrt(std::ldexp(1.0, static_cast<int>(k)));
    if (t <= a || t >= b) return 0.0;
    return t <= mid ? slope * (t - a) : slope * (b - t);
}

double weight(std::size_t n, HolderExponent alpha) {
    if (n == 0) return 1.0;
    return weight_at_level(split_index(n).level, alpha);
}

double weight_at_level(std::size_t level, HolderExponent alpha) {
    return std::exp2(static_cast<double>(level) * (alpha.value - 0.5) + alpha.value - 1.0);
}

double schauder_peak(std::size_t level) {
    return std::exp2(-0.5 * static_cast<double>(level) - 1.0);
}

}  // namespace schilder

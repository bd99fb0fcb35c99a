// SPDX-License-Identifier: MIT

#include "schilder/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace schilder {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DecaySpec DecaySpec::geometric(double lambda0, double ratio) {
    DecaySpec s;
    s.kind = Kind::geometric;
    s.lambda0 = lambda0;
    s.ratio = ratio;
    return s;
}

DecaySpec DecaySpec::power(double lambda0, double p) {
    DecaySpec s;
    s.kind = Kind::power;
    s.lambda0 = lambda0;
    s.exponent = p;
    return s;
}

DecaySpec DecaySpec::explicit_list(std::vector<double> lambdas) {
    DecaySpec s;
    s.kind = Kind::explicit_list;
    s.values = std::move(lambdas);
    return s;
}

Spectrum Spectrum::make(const DecaySpec& spec, std::size_t channels) {
    if (channels < 1) throw ConfigError("channel count K must be >= 1");
    Spectrum out;
    out.decay_ = spec;
    out.lambdas_.resize(channels);
    switch (spec.kind) {
        case DecaySpec::Kind::geometric:
            if (!(spec.ratio > 0.0 && spec.ratio < 1.0))
                throw ConfigError("geometric ratio must lie in (0,1)");
            if (!(spec.lambda0 > 0.0))
                throw ConfigError("geometric lambda0 must be positive");
            for (std::size_t k = 0; k < channels; ++k)
                out.lambdas_[k] = spec.lambda0 * std::pow(spec.ratio, static_cast<double>(k));
            break;
        case DecaySpec::Kind::power:
            if (!(spec.exponent > 1.0))
                throw ConfigError("power exponent p must be > 1");
            if (!(spec.lambda0 > 0.0))
                throw ConfigError("power lambda0 must be positive");
            for (std::size_t k = 0; k < channels; ++k)
                out.lambdas_[k] =
                    spec.lambda0 / std::pow(static_cast<double>(k + 1), spec.exponent);
            break;
        case DecaySpec::Kind::explicit_list:
            if (spec.values.size() != channels)
                throw ConfigError("explicit spectrum has " +
                                  std::to_string(spec.values.size()) +
                                  " eigenvalues, expected K = " + std::to_string(channels));
            for (std::size_t k = 0; k < channels; ++k) {
                if (!(spec.values[k] >= 0.0) || !std::isfinite(spec.values[k]))
                    throw ConfigError("eigenvalues must be finite and nonnegative");
                out.lambdas_[k] = spec.values[k];
            }
            break;
    }
    out.trace_ = 0.0;
    for (double l : out.lambdas_) out.trace_ += l;
    out.lambda_max_ = *std::max_element(out.lambdas_.begin(), out.lambdas_.end());
    return out;
}

bool Spectrum::has_decay_law() const {
    return decay_.kind != DecaySpec::Kind::explicit_list;
}

double Spectrum::law_lambda(std::size_t k) const {
    if (k < lambdas_.size()) return lambdas_[k];
    switch (decay_.kind) {
        case DecaySpec::Kind::geometric:
            return decay_.lambda0 * std::pow(decay_.ratio, static_cast<double>(k));
        case DecaySpec::Kind::power:
            return decay_.lambda0 / std::pow(static_cast<double>(k + 1), decay_.exponent);
        case DecaySpec::Kind::explicit_list:
            return 0.0;
    }
    return 0.0;
}

double Spectrum::law_trace() const {
    switch (decay_.kind) {
        case DecaySpec::Kind::geometric:
            return decay_.lambda0 / (1.0 - decay_.ratio);
        case DecaySpec::Kind::power: {
            // lambda0 * zeta(p): direct sum plus an integral tail bound.
            const double p = decay_.exponent;
            double s = 0.0;
            for (std::size_t k = 1; k <= 100000; ++k)
                s += std::pow(static_cast<double>(k), -p);
            s += std::pow(100000.5, 1.0 - p) / (p - 1.0);
            return decay_.lambda0 * s;
        }
        case DecaySpec::Kind::explicit_list:
            return trace_;
    }
    return trace_;
}

double h0_energy(std::span<const double> u, const Spectrum& spec) {
    if (u.size() != spec.channels())
        throw std::invalid_argument("h0_energy: coordinate count does not match spectrum");
    double total = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] == 0.0) continue;              // 0/0 = 0
        if (spec.lambda(k) == 0.0) return kInf; // c/0 = inf
        total += u[k] * u[k] / spec.lambda(k);
    }
    return total;
}

HVector project(std::span<const double> v, std::size_t cutoff, ProjectPart part) {
    if (cutoff > v.size()) throw std::domain_error("projection cutoff out of range");
    HVector out(v.size(), 0.0);
    if (part == ProjectPart::head)
        std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(cutoff), out.begin());
    else
        std::copy(v.begin() + static_cast<std::ptrdiff_t>(cutoff), v.end(),
                  out.begin() + static_cast<std::ptrdiff_t>(cutoff));
    return out;
}

}  // namespace schilder

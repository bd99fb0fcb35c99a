// SPDX-License-Identifier: MIT
//
// The covariance operator Q at finite channel truncation K: eigenvalues in
// the eigenbasis, trace, decay-law extrapolation, the H0 inner product and
// the head/tail projectors.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "schilder/types.hpp"

namespace schilder {

struct DecaySpec {
    enum class Kind { geometric, power, explicit_list };

    Kind kind = Kind::geometric;
    double lambda0 = 0.5;            // first eigenvalue (geometric / power)
    double ratio = 0.5;              // geometric: lambda_k = lambda0 ratio^k
    double exponent = 2.0;           // power: lambda_k = lambda0 / (k+1)^p
    std::vector<double> values;      // explicit list

    static DecaySpec geometric(double lambda0, double ratio);
    static DecaySpec power(double lambda0, double p);
    static DecaySpec explicit_list(std::vector<double> lambdas);
};

class Spectrum {
public:
    Spectrum() = default;  // empty; fill via make()

    // Materializes lambda_0..lambda_{K-1}; validates the decay parameters.
    static Spectrum make(const DecaySpec& spec, std::size_t channels);

    [[nodiscard]] std::size_t channels() const { return lambdas_.size(); }
    [[nodiscard]] double lambda(std::size_t k) const { return lambdas_[k]; }
    [[nodiscard]] const std::vector<double>& lambdas() const { return lambdas_; }

    [[nodiscard]] double trace() const { return trace_; }          // truncated
    [[nodiscard]] double lambda_max() const { return lambda_max_; }

    // Extrapolation beyond the truncation. Explicit spectra have no law:
    // the model is K-dimensional and law_lambda(k >= K) is 0.
    [[nodiscard]] bool has_decay_law() const;
    [[nodiscard]] double law_lambda(std::size_t k) const;
    [[nodiscard]] double law_trace() const;   // full-law trace; trace() if explicit

    [[nodiscard]] const DecaySpec& decay() const { return decay_; }

private:
    std::vector<double> lambdas_;
    DecaySpec decay_;
    double trace_ = 0.0;
    double lambda_max_ = 0.0;
};

// Sum_k u_k^2 / lambda_k with the conventions c/0 = inf (c > 0), 0/0 = 0.
double h0_energy(std::span<const double> u, const Spectrum& spec);

enum class ProjectPart { head, tail };

// head zeroes coordinates >= cutoff, tail zeroes coordinates < cutoff.
HVector project(std::span<const double> v, std::size_t cutoff, ProjectPart part);

}  // namespace schilder

// SPDX-License-Identifier: MIT
//
// Haar and Schauder functions on [0,1], dyadic index decomposition, and the
// Ciesielski weights c_n(alpha). Everything here is closed-form and stateless.
#pragma once

#include <cstddef>

#include "schilder/types.hpp"

namespace schilder {

// n = 2^level + shift, unique for n >= 1. n = 0 is the constant index.
struct BasisIndex {
    std::size_t n;
    std::size_t level;
    std::size_t shift;
};

// Throws std::invalid_argument for n = 0.
BasisIndex split_index(std::size_t n);

// chi_n(t). Boundary conventions are literal: the positive part is
// left-closed/right-open, the negative part closed on both ends.
double haar_eval(std::size_t n, double t);

// phi_n(t) = int_0^t chi_n, evaluated as the closed-form tent.
double schauder_eval(std::size_t n, double t);

// c_0 = 1, c_{2^k+l}(alpha) = 2^{k(alpha-1/2)+alpha-1}.
double weight(std::size_t n, HolderExponent alpha);

// Same weight for any index at the given dyadic level (they are all equal).
double weight_at_level(std::size_t level, HolderExponent alpha);

// sup_t |phi_{2^k+l}| = 2^{-k/2-1}, attained at the tent peak.
double schauder_peak(std::size_t level);

}  // namespace schilder

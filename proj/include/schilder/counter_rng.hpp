// SPDX-License-Identifier: MIT
//
// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
// Every draw is a pure function of (seed, path, n, k), so sampling is
// reproducible under any parallel schedule and any request order.
#pragma once

#include <array>
#include <cstdint>

#include "schilder/gaussian.hpp"

namespace schilder {

namespace philox {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> block(std::uint32_t k0, std::uint32_t k1,
                                          std::array<std::uint32_t, 4> ctr) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k0,
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k1,
               static_cast<std::uint32_t>(p0)};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return ctr;
}

}  // namespace philox

// 64 uniform bits for the counter (path, n, k) under the given seed.
inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t path,
                                  std::uint32_t n, std::uint32_t k) {
    const auto out = philox::block(
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        {static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32), n, k});
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// Uniform in (0,1), 53-bit granularity, symmetric around 1/2.
inline double counter_uniform(std::uint64_t seed, std::uint64_t path,
                              std::uint32_t n, std::uint32_t k) {
    return (static_cast<double>(counter_bits(seed, path, n, k) >> 11) + 0.5) * 0x1p-53;
}

// Standard normal by inverse CDF; no rejection loop, so the counter
// contract holds draw-for-draw.
inline double counter_normal(std::uint64_t seed, std::uint64_t path,
                             std::uint32_t n, std::uint32_t k) {
    return inv_norm_cdf(counter_uniform(seed, path, n, k));
}

}  // namespace schilder

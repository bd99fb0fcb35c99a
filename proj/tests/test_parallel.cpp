// SPDX-License-Identifier: MIT
//
// The OpenMP kernels must match their serial references bitwise: the counter
// RNG makes draws schedule-independent and every shared reduction is either
// exact (integer counts, max) or serialized over a path-indexed buffer.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schilder/ldp.hpp"
#include "schilder/qwiener.hpp"

using namespace schilder;

namespace {

SimConfig cfg8() {
    SimConfig cfg;
    cfg.spectrum = Spectrum::make(DecaySpec::geometric(0.5, 0.5), 4);
    cfg.level = 5;
    cfg.channels = 4;
    cfg.seed = 42;
    cfg.paths = 5000;
    return cfg;
}

}  // namespace

TEST_CASE("mc_prob: serial == parallel bitwise") {
    const SimConfig cfg = cfg8();
    BallSpec ball(CoeffMatrix::from_raw(Matrix(cfg.coeffs(), 4), HolderExponent(0.4)), 0.9,
                  cfg.spectrum);
    const McEstimate serial = mc_prob(ball, 0.5, cfg, exec::Mode::serial);
    const McEstimate parallel = mc_prob(ball, 0.5, cfg, exec::Mode::parallel);
    CHECK(serial.hits == parallel.hits);
    CHECK(serial.p_hat == parallel.p_hat);
    CHECK(serial.std_error == parallel.std_error);
}

TEST_CASE("covariance_check: serial == parallel bitwise") {
    const SimConfig cfg = cfg8();
    const HVector e0 = {1, 0, 0, 0};
    const CovReport serial = covariance_check(cfg, e0, e0, 0.5, 1.0, exec::Mode::serial);
    const CovReport parallel = covariance_check(cfg, e0, e0, 0.5, 1.0, exec::Mode::parallel);
    CHECK(serial.estimate == parallel.estimate);
    CHECK(serial.std_error == parallel.std_error);
}

TEST_CASE("log_bound_stat: serial == parallel bitwise") {
    SimConfig cfg = cfg8();
    cfg.paths = 100;
    CHECK(log_bound_stat(cfg, exec::Mode::serial) ==
          log_bound_stat(cfg, exec::Mode::parallel));
}

TEST_CASE("holder_exhaustive: serial == parallel bitwise") {
    const SimConfig cfg = cfg8();
    for (std::uint64_t i = 0; i < 8; ++i) {
        const DyadicPath p = sample_path(cfg, i);
        CHECK(holder_exhaustive(p, HolderExponent(0.35), exec::Mode::serial) ==
              holder_exhaustive(p, HolderExponent(0.35), exec::Mode::parallel));
    }
}

TEST_CASE("tight_check: serial == parallel bitwise") {
    const SimConfig cfg = cfg8();
    DivergentSeq seq;
    const TightSet set =
        tight_build(1.0, cfg.spectrum, seq, HolderExponent(0.4), cfg.coeffs(), 4);
    const std::vector<double> grid = {0.25, 0.125};
    const TightReport serial = tight_check(set, grid, cfg, exec::Mode::serial);
    const TightReport parallel = tight_check(set, grid, cfg, exec::Mode::parallel);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(serial.points[i].outside == parallel.points[i].outside);
        CHECK(serial.points[i].estimate == parallel.points[i].estimate);
    }
}

TEST_CASE("draws are independent of request order") {
    const SimConfig cfg = cfg8();
    const CoeffMatrix late = sample_coeffs(cfg, 4999);
    const CoeffMatrix early = sample_coeffs(cfg, 0);
    // Re-request in the opposite order.
    const CoeffMatrix early2 = sample_coeffs(cfg, 0);
    const CoeffMatrix late2 = sample_coeffs(cfg, 4999);
    CHECK(early.raw == early2.raw);
    CHECK(late.raw == late2.raw);
}

// SPDX-License-Identifier: MIT
//
// Serial vs OpenMP timings for the data-parallel kernels. The outputs must
// match bitwise (counter RNG + exact reductions); the harness checks that
// while it times.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "schilder/ldp.hpp"
#include "schilder/qwiener.hpp"

using namespace schilder;

namespace {

template <typename F>
double time_s(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-28s serial %8.3fs   omp %8.3fs   speedup %5.2fx   %s\n", name, serial,
                parallel, serial / parallel, identical ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run serially\n\n");
#endif

    SimConfig cfg;
    cfg.spectrum = Spectrum::make(DecaySpec::geometric(0.5, 0.5), 8);
    cfg.level = 8;
    cfg.channels = 8;
    cfg.seed = 42;
    cfg.paths = 40000;

    // Ball-hit counting over 40k paths.
    {
        BallSpec ball(CoeffMatrix::from_raw(Matrix(cfg.coeffs(), cfg.channels),
                                            HolderExponent(0.4)),
                      2.0, cfg.spectrum);
        McEstimate a, b;
        const double ts = time_s([&] { a = mc_prob(ball, 1.0, cfg, exec::Mode::serial); });
        const double tp = time_s([&] { b = mc_prob(ball, 1.0, cfg, exec::Mode::parallel); });
        report("mc_prob (N=256, K=8)", ts, tp, a.hits == b.hits);
    }

    // Covariance estimate over 40k paths.
    {
        const HVector e0 = {1, 0, 0, 0, 0, 0, 0, 0};
        CovReport a, b;
        const double ts =
            time_s([&] { a = covariance_check(cfg, e0, e0, 0.5, 1.0, exec::Mode::serial); });
        const double tp =
            time_s([&] { b = covariance_check(cfg, e0, e0, 0.5, 1.0, exec::Mode::parallel); });
        report("covariance_check", ts, tp, a.estimate == b.estimate);
    }

    // Exhaustive Holder scan at level 7 (all ~8k grid pairs), 64 paths.
    {
        SimConfig path_cfg = cfg;
        path_cfg.level = 7;
        double a = 0.0, b = 0.0;
        const double ts = time_s([&] {
            for (std::uint64_t i = 0; i < 64; ++i)
                a += holder_exhaustive(sample_path(path_cfg, i), HolderExponent(0.4),
                                       exec::Mode::serial);
        });
        const double tp = time_s([&] {
            for (std::uint64_t i = 0; i < 64; ++i)
                b += holder_exhaustive(sample_path(path_cfg, i), HolderExponent(0.4),
                                       exec::Mode::parallel);
        });
        report("holder_exhaustive (J=7)", ts, tp, a == b);
    }

    // Tightness membership over 40k paths.
    {
        DivergentSeq seq;
        const TightSet set = tight_build(1.0, cfg.spectrum, seq, HolderExponent(0.4),
                                         cfg.coeffs(), cfg.channels);
        const std::vector<double> grid = {0.25};
        TightReport a, b;
        const double ts = time_s([&] { a = tight_check(set, grid, cfg, exec::Mode::serial); });
        const double tp = time_s([&] { b = tight_check(set, grid, cfg, exec::Mode::parallel); });
        report("tight_check", ts, tp, a.points[0].outside == b.points[0].outside);
    }
    return 0;
}

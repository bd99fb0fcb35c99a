// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "schilder/ciesielski.hpp"
#include "schilder/counter_rng.hpp"
#include "schilder/dyadic_basis.hpp"

using namespace schilder;

namespace {

DyadicPath monomial(std::size_t J, std::size_t K, std::size_t channel, int degree) {
    Matrix m((std::size_t{1} << J) + 1, K);
    const double h = std::ldexp(1.0, -static_cast<int>(J));
    for (std::size_t j = 0; j < m.rows(); ++j)
        m(j, channel) = std::pow(static_cast<double>(j) * h, degree);
    return DyadicPath(J, K, std::move(m));
}

DyadicPath random_path(std::size_t J, std::size_t K, std::uint64_t seed) {
    // Brownian-like: cumulative sums of normal increments scaled by sqrt(h).
    Matrix m((std::size_t{1} << J) + 1, K);
    const double root_h = std::sqrt(std::ldexp(1.0, -static_cast<int>(J)));
    for (std::size_t k = 0; k < K; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j < m.rows(); ++j) {
            acc += root_h * counter_normal(seed, j, 0, static_cast<std::uint32_t>(k));
            m(j, k) = acc;
        }
    }
    return DyadicPath(J, K, std::move(m));
}

Matrix random_raw(std::size_t N, std::size_t K, std::uint64_t seed) {
    Matrix m(N, K);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t k = 0; k < K; ++k)
            m(n, k) = counter_normal(seed, 0, static_cast<std::uint32_t>(n),
                                     static_cast<std::uint32_t>(k));
    return m;
}

// Naive synthesis oracle: direct evaluation of the double series.
double series_at(const Matrix& raw, std::size_t k, double t) {
    double s = 0.0;
    for (std::size_t n = 0; n < raw.rows(); ++n) s += raw(n, k) * schauder_eval(n, t);
    return s;
}

}  // namespace

TEST_CASE("forward: spec examples") {
    const HolderExponent alpha(0.4);

    SUBCASE("F(s) = s e_1 maps to the unit row") {
        const CoeffMatrix c = forward(monomial(5, 3, 1, 1), alpha);
        CHECK(c.raw(0, 1) == 1.0);
        for (std::size_t n = 0; n < c.count(); ++n)
            for (std::size_t k = 0; k < 3; ++k)
                if (!(n == 0 && k == 1)) CHECK(c.raw(n, k) == 0.0);
        CHECK(c.scaled(0, 1) == 1.0);
    }
    SUBCASE("zero path maps to zero") {
        const CoeffMatrix c = forward(DyadicPath::zeros(4, 2), alpha);
        for (double v : c.raw.data()) CHECK(v == 0.0);
    }
    SUBCASE("scalar t^2 at J=1") {
        const CoeffMatrix c = forward(monomial(1, 1, 0, 2), alpha);
        CHECK(c.raw(0, 0) == 1.0);
        CHECK(c.raw(1, 0) == doctest::Approx(-0.5).epsilon(1e-15));
    }
}

TEST_CASE("inverse: spec examples and agreement with the naive series") {
    const HolderExponent alpha(0.4);
    SUBCASE("raw = (1,0,...) synthesizes F(t) = t") {
        Matrix raw(8, 1);
        raw(0, 0) = 1.0;
        const DyadicPath p = synthesize(raw, 5);
        for (std::size_t j = 0; j < p.points(); ++j)
            CHECK(p.samples(j, 0) == static_cast<double>(j) / 32.0);
    }
    SUBCASE("midpoint refinement equals direct series evaluation") {
        const Matrix raw = random_raw(16, 2, 501);
        const DyadicPath p = synthesize(raw, 6);
        for (std::size_t j = 0; j < p.points(); ++j) {
            const double t = static_cast<double>(j) / 64.0;
            for (std::size_t k = 0; k < 2; ++k)
                CHECK(p.samples(j, k) == doctest::Approx(series_at(raw, k, t)).epsilon(1e-13));
        }
    }
    SUBCASE("J_out below the coefficient level is rejected") {
        const Matrix raw = random_raw(16, 1, 502);
        CHECK_THROWS_AS(synthesize(raw, 3), std::domain_error);
    }
}

TEST_CASE("roundtrip and linearity") {
    const HolderExponent alpha(0.35);
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
        const std::size_t J = 3 + rep % 4;
        const DyadicPath p = random_path(J, 3, 600 + rep);
        const DyadicPath back = inverse(forward(p, alpha), J);
        for (std::size_t j = 0; j < p.points(); ++j)
            for (std::size_t k = 0; k < 3; ++k)
                CHECK(back.samples(j, k) == doctest::Approx(p.samples(j, k)).epsilon(1e-10));
    }

    SUBCASE("forward is linear") {
        const DyadicPath p = random_path(5, 2, 611);
        const DyadicPath q = random_path(5, 2, 612);
        Matrix combo(p.points(), 2);
        for (std::size_t j = 0; j < p.points(); ++j)
            for (std::size_t k = 0; k < 2; ++k)
                combo(j, k) = 2.0 * p.samples(j, k) - 3.0 * q.samples(j, k);
        const CoeffMatrix cp = forward(p, alpha);
        const CoeffMatrix cq = forward(q, alpha);
        const CoeffMatrix cc = forward(DyadicPath(5, 2, std::move(combo)), alpha);
        for (std::size_t n = 0; n < cc.count(); ++n)
            for (std::size_t k = 0; k < 2; ++k)
                CHECK(cc.raw(n, k) ==
                      doctest::Approx(2.0 * cp.raw(n, k) - 3.0 * cq.raw(n, k)).epsilon(1e-12));
    }

    SUBCASE("single-channel forward equals the multichannel column") {
        const DyadicPath p = random_path(5, 3, 613);
        const CoeffMatrix full = forward(p, alpha);
        for (std::size_t k = 0; k < 3; ++k) {
            Matrix col(p.points(), 1);
            for (std::size_t j = 0; j < p.points(); ++j) col(j, 0) = p.samples(j, k);
            const CoeffMatrix single = forward(DyadicPath(5, 1, std::move(col)), alpha);
            for (std::size_t n = 0; n < full.count(); ++n)
                CHECK(single.raw(n, 0) == full.raw(n, k));
        }
    }
}

TEST_CASE("sequence norms") {
    const HolderExponent alpha(0.4);
    SUBCASE("row examples: rows (3,4) and (5,0)") {
        Matrix scaled(2, 2);
        scaled(0, 0) = 3.0;
        scaled(0, 1) = 4.0;
        scaled(1, 0) = 5.0;
        const CoeffMatrix c = CoeffMatrix::from_scaled(std::move(scaled), alpha);
        CHECK(seq_norm_h(c) == 5.0);
        CHECK(seq_norm_comp(c) == 5.0);
    }
    SUBCASE("component sup never exceeds the row norm") {
        for (std::uint64_t rep = 0; rep < 50; ++rep) {
            const CoeffMatrix c =
                CoeffMatrix::from_raw(random_raw(16, 4, 700 + rep), alpha);
            CHECK(seq_norm_comp(c) <= seq_norm_h(c));
        }
    }
    SUBCASE("T(s e_1) has norm exactly 1") {
        const CoeffMatrix c = forward(monomial(6, 2, 1, 1), alpha);
        CHECK(seq_norm_h(c) == 1.0);
        CHECK(seq_norm_comp(c) == 1.0);
    }
}

TEST_CASE("dyadic_holder") {
    SUBCASE("linear path has seminorm exactly 1 for any alpha") {
        for (double a : {0.2, 0.4, 0.7}) {
            CHECK(dyadic_holder(monomial(5, 2, 1, 1), HolderExponent(a)).value == 1.0);
            CHECK(dyadic_holder(monomial(9, 2, 1, 1), HolderExponent(a)).value == 1.0);
        }
    }
    SUBCASE("zero path") {
        CHECK(dyadic_holder(DyadicPath::zeros(5, 2), HolderExponent(0.4)).value == 0.0);
    }
    SUBCASE("t^2 at alpha=1/2, J=4: exhaustive scan oracle") {
        // Independent double-loop scan; the max quotient is 21 sqrt(11)/64
        // at the pair (5/16, 1).
        const DyadicPath p = monomial(4, 1, 0, 2);
        double oracle = 0.0;
        for (std::size_t i = 0; i < 17; ++i)
            for (std::size_t j = i + 1; j < 17; ++j) {
                const double s = static_cast<double>(i) / 16.0;
                const double t = static_cast<double>(j) / 16.0;
                oracle = std::max(oracle, (t * t - s * s) / std::sqrt(t - s));
            }
        const HolderEstimate est = dyadic_holder(p, HolderExponent(0.5));
        CHECK(est.exhaustive);
        CHECK(est.value == doctest::Approx(oracle).epsilon(1e-15));
        CHECK(est.value == doctest::Approx(21.0 * std::sqrt(11.0) / 64.0).epsilon(1e-15));
    }
    SUBCASE("strategy switch and ordering") {
        const DyadicPath small = random_path(6, 2, 801);
        CHECK(dyadic_holder(small, HolderExponent(0.3)).exhaustive);
        const DyadicPath big = random_path(8, 2, 802);
        CHECK_FALSE(dyadic_holder(big, HolderExponent(0.3)).exhaustive);
        // The restricted scan never exceeds the exhaustive one.
        for (std::uint64_t rep = 0; rep < 10; ++rep) {
            const DyadicPath p = random_path(5, 2, 810 + rep);
            const HolderExponent a(0.45);
            CHECK(holder_dyadic_pairs(p, a) <= holder_exhaustive(p, a) + 1e-15);
        }
    }
}

TEST_CASE("isomorphism norm bounds") {
    SUBCASE("operator norm 1: seq_norm_h(forward) <= dyadic_holder") {
        for (std::uint64_t rep = 0; rep < 100; ++rep) {
            const double a = rep % 2 == 0 ? 0.2 : 0.45;
            const DyadicPath p = random_path(6, 3, 900 + rep);
            CHECK(seq_norm_h(forward(p, HolderExponent(a))) <=
                  dyadic_holder(p, HolderExponent(a)).value);
        }
    }
    SUBCASE("inverse bound with the Theorem constant at alpha = 1/3") {
        const HolderExponent third(1.0 / 3.0);
        const double bound = 2.0 / ((std::cbrt(2.0) - 1.0) * (std::cbrt(4.0) - 1.0));
        CHECK(bound == doctest::Approx(13.099472971564776).epsilon(1e-14));
        for (std::uint64_t rep = 0; rep < 100; ++rep) {
            const CoeffMatrix c = CoeffMatrix::from_raw(random_raw(32, 2, 950 + rep), third);
            const double lhs = dyadic_holder(inverse(c, 5), third).value;
            CHECK(lhs <= bound * seq_norm_h(c) + 1e-9);
        }
    }
}

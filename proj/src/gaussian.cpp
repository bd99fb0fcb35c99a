// SPDX-License-Identifier: MIT

#include "schilder/gaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace schilder {

namespace {

constexpr double kInvSqrtPi = 5.6418958354775628695e-1;  // 1/sqrt(pi)
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))
constexpr double kInf = std::numeric_limits<double>::infinity();

// --------------------------------------------------------------------------
// Cody CALERF: three rational segments.
//   |x| <= 0.46875                erf(x)  = x R1(x^2)
//   0.46875 <= x <= 4             erfcx(x) = R2(x)
//   x > 4                         erfcx(x) = (1/sqrt(pi) + R3(1/x^2)/x^2)/x
// --------------------------------------------------------------------------

constexpr double A[5] = {3.16112374387056560e00, 1.13864154151050156e02,
                         3.77485237685302021e02, 3.20937758913846947e03,
                         1.85777706184603153e-1};
constexpr double B[4] = {2.36012909523441209e01, 2.44024637934444173e02,
                         1.28261652607737228e03, 2.84423683343917062e03};
constexpr double C[9] = {5.64188496988670089e-1, 8.88314979438837594e00,
                         6.61191906371416295e01, 2.98635138197400131e02,
                         8.81952221241769090e02, 1.71204761263407058e03,
                         2.05107837782607147e03, 1.23033935479799725e03,
                         2.15311535474403846e-8};
constexpr double D[8] = {1.57449261107098347e01, 1.17693950891312499e02,
                         5.37181101862009858e02, 1.62138957456669019e03,
                         3.29079923573345963e03, 4.36261909014324716e03,
                         3.43936767414372164e03, 1.23033935480374942e03};
constexpr double P[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                         1.25781726111229246e-1, 1.60837851487422766e-2,
                         6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double Q[5] = {2.56852019228982242e00, 1.87295284992346047e00,
                         5.27905102951428412e-1, 6.05183413124413191e-2,
                         2.33520497626869185e-3};

double erf_small(double x) {
    // |x| <= 0.46875
    const double z = x * x;
    double num = A[4] * z;
    double den = z;
    for (int i = 0; i < 3; ++i) {
        num = (num + A[i]) * z;
        den = (den + B[i]) * z;
    }
    return x * (num + A[3]) / (den + B[3]);
}

double erfcx_mid(double y) {
    // 0.46875 <= y <= 4
    double num = C[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
        num = (num + C[i]) * y;
        den = (den + D[i]) * y;
    }
    return (num + C[7]) / (den + D[7]);
}

double erfcx_large(double y) {
    // y > 4
    const double z = 1.0 / (y * y);
    double num = P[5] * z;
    double den = z;
    for (int i = 0; i < 4; ++i) {
        num = (num + P[i]) * z;
        den = (den + Q[i]) * z;
    }
    const double r = z * (num + P[4]) / (den + Q[4]);
    return (kInvSqrtPi - r) / y;
}

// exp(-y^2) with the split-argument trick: the rounding of y*y would
// otherwise be amplified by the large exponent.
double exp_neg_sq(double y) {
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del);
}

}  // namespace

double erfcx_cody(double x) {
    if (x < 0.0) {
        // erfcx(-x) = 2 exp(x^2) - erfcx(x); overflows around x < -26.6.
        const double xx = x * x;
        if (xx > 708.0) return kInf;
        return 2.0 * std::exp(xx) - erfcx_cody(-x);
    }
    if (x <= 0.46875) return std::exp(x * x) * (1.0 - erf_small(x));
    if (x <= 4.0) return erfcx_mid(x);
    return erfcx_large(x);
}

double erfc_cody(double x) {
    const double y = std::fabs(x);
    double r;
    if (y <= 0.46875)
        r = 1.0 - erf_small(x);  // signed: handles both sides at once
    else if (y <= 4.0)
        r = erfcx_mid(y) * exp_neg_sq(y);
    else if (y >= 26.6)  // erfc underflows near 26.5
        r = 0.0;
    else
        r = erfcx_large(y) * exp_neg_sq(y);
    if (x < -0.46875) r = 2.0 - r;
    return r;
}

double erf_cody(double x) { return 1.0 - erfc_cody(x); }

double norm_cdf(double x) { return 0.5 * erfc_cody(-x / kSqrt2); }

double norm_tail(double x) { return 0.5 * erfc_cody(x / kSqrt2); }

double log_norm_interval(double a, double b) {
    if (!(a < b)) return -kInf;
    // Mirror so the midpoint is nonnegative.
    double m = 0.5 * (a + b);
    if (m < 0.0) {
        const double t = a;
        a = -b;
        b = -t;
        m = -m;
    }
    const double w = 0.5 * (b - a);

    if (w * (1.0 + m) <= 0.01) {
        // Narrow interval: Phi(b)-Phi(a) = 2w phi(m) (1 + He2 w^2/6 + He4 w^4/120 + ...)
        const double m2 = m * m;
        const double he2 = m2 - 1.0;
        const double he4 = m2 * m2 - 6.0 * m2 + 3.0;
        const double w2 = w * w;
        return std::log(2.0 * w) - 0.5 * m2 - kLogSqrt2Pi +
               std::log1p(w2 * (he2 / 6.0 + he4 * w2 / 120.0));
    }
    if (a >= 0.0) {
        // Both endpoints in the upper tail: factor out exp(-a^2/2).
        //   Phi(b)-Phi(a) = (erfcx(a') - erfcx(b') e^{-(b^2-a^2)/2}) e^{-a^2/2} / 2
        const double ea = erfcx_cody(a / kSqrt2);
        const double gap = (b - a) * (b + a) * 0.5;
        double d = ea;
        if (gap < 708.0) d -= erfcx_cody(b / kSqrt2) * std::exp(-gap);
        return -0.5 * a * a + std::log(0.5 * d);
    }
    // Interval straddles zero. The two tail masses add without cancellation.
    const double q = norm_tail(b) + norm_tail(-a);
    if (q < 0.5) return std::log1p(-q);
    return std::log(0.5 * (erf_cody(b / kSqrt2) + erf_cody(-a / kSqrt2)));
}

double inv_norm_cdf(double p) {
    // Wichura, Applied Statistics 37 (1988), algorithm AS 241 (PPND16).
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("inv_norm_cdf requires p in (0,1)");
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -v : v;
}

}  // namespace schilder

// SPDX-License-Identifier: MIT
//
// Scalar Gaussian machinery: error function via Cody's rational Chebyshev
// approximations, the scaled complement erfcx for far-tail work, a stable
// log of Phi(b)-Phi(a), and the AS241 inverse normal CDF.
#pragma once

namespace schilder {

// Cody's rational approximations (W. J. Cody, "Rational Chebyshev
// approximation for the error function", Math. Comp. 23 (1969) 631-637;
// coefficient set as distributed in netlib CALERF). Maximal relative error
// of the rational functions is below 6e-19 on each segment; the double
// evaluation is accurate to a few ulp, comfortably under 1e-14.
double erf_cody(double x);
double erfc_cody(double x);

// erfcx(x) = exp(x^2) erfc(x), monotone ~ 1/(x sqrt(pi)) for large x.
// Accurate for all x >= 0; for x < -26.6 it overflows (never needed here).
double erfcx_cody(double x);

// Phi, and the upper tail Qbar(x) = P(Z > x) = erfc(x/sqrt 2)/2.
double norm_cdf(double x);
double norm_tail(double x);

// log(Phi(b) - Phi(a)) for a < b, stable in all regimes: narrow intervals
// use a Hermite series around the midpoint, same-tail intervals an erfcx
// ratio, near-full intervals log1p of the two tail masses. Relative error
// in the returned log is below 1e-12 per factor. Returns -inf for a >= b.
double log_norm_interval(double a, double b);

// Inverse of Phi by Wichura's algorithm AS 241 (PPND16 rational
// approximations, ~1e-15 relative). Requires p in (0,1).
double inv_norm_cdf(double p);

}  // namespace schilder

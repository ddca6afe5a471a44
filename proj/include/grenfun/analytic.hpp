#pragma once

// Characteristic functions of the centered/scaled block-structure sums
//   V_n = (S_n - T_n)/sqrt(n),  W_n = T_n/n
// and of their limit, together with the Levy-measure form of the limit.
//
// Finite n:   E exp(i t V_n + i u W_n)
//               = exp( sum_{j=1}^n [ e^{ij(u/n - t/sqrt n)} (1 - it/sqrt n)^{-j} - 1 ] / j )
// Limit:      exp( int_0^1 ( e^{-(t^2/2 - iu) y} - 1 ) / y dy )
//               = exp( -gamma - Gamma(0, t^2/2 - iu) - log(t^2/2 - iu) ),
// principal logarithms throughout; the argument t^2/2 - iu stays in the
// closed right half plane and the code asserts it.

#include <complex>

namespace grenfun {

std::complex<double> charfun_VW_finite(long n, double t, double u);

// Limit characteristic function by adaptive quadrature of the defining
// integral (absolute accuracy ~1e-10).  The removable singularity at 0 is
// integrated in closed form below y = 1e-4 via the exponential series.
std::complex<double> charfun_VW_limit_quadrature(double t, double u);

// Upper incomplete gamma at zero index, Gamma(0, z) = E_1(z): alternating
// series -gamma - log z - sum (-z)^k/(k k!) for |z| <= 4, continued
// fraction e^{-z}/(z+1- 1/(z+3- 4/(z+5- ...))) for |z| > 4.  Requires
// Re z >= 0, z != 0 (principal branch).
std::complex<double> incomplete_gamma_zero(std::complex<double> z);

std::complex<double> charfun_VW_closed_form(double t, double u);

// Density of the limit's Levy measure on (v, w), w in (0,1):
//   phi(v / sqrt w) * w^{-3/2},  phi the standard normal density.
double levy_density(double v, double w);

// | (2-D integral of (e^{i(tv+uw)} - 1) against the Levy density)
//   - (1-D limit exponent integral) |.  The |(v,w)| <= 1 compensator term
// integrates to 0 by v-symmetry and is omitted; below w = 1e-4 both
// representations reduce to the same series value, so the comparison runs
// over w in [1e-4, 1] with the v-integral done numerically.
double lk_exponent_check(double t, double u);

}  // namespace grenfun

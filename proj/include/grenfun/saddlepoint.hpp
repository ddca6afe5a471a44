#pragma once

// Coefficient extraction and saddle-point evaluation for the per-block
// characteristic functions
//
//   phi_{n,j}(s,t) = (j^j / Gamma(j)) * int_0^inf exp(j f_{n,s,t}(x)) / x dx,
//
//   f_{n,s,t}(z) = is[(h(1/z) - h(1)) z + h'(1)(z - 1)]/b_n
//                  + it (z - 1)/c_n - z + log z          (Re z > 0),
//
// with b_n = sqrt(3/4 h''(1)^2 log n) and c_n = sqrt(n) (scaled mode) or 1
// (unit mode).  Also the generating-function identity
//
//   [z^n] exp(delta * sum_{j<=n} z^j / j) = prod_{j<=n} (1 + (delta-1)/j),
//
// whose two sides are computed by independent routes (series convolution
// vs running product) as a cross-check of the coefficient machinery.

#include <complex>
#include <utility>
#include <vector>

#include "grenfun/functionals.hpp"

namespace grenfun {

struct ComplexSeries {
  std::vector<std::complex<double>> coeffs;  // coeffs[k] multiplies z^k
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

// Coefficients of exp(delta * (z + z^2/2 + ... + z^N/N)) through degree N,
// by the ODE recurrence k f_k = sum_m m g_m f_{k-m} with compensated
// accumulation.  Guarded to N <= 10^4.
ComplexSeries series_exp_partial_log(std::complex<double> delta, int order);

// prod_{j=1..n} (1 + (delta - 1)/j), the closed-form side.  n <= 10^4.
std::complex<double> rising_ratio_product(std::complex<double> delta, int n);

// (series coefficient, product) pair at degree n; n <= 10^3 keeps the
// convolution side well inside its accuracy envelope.
std::pair<std::complex<double>, std::complex<double>> cauchy_coefficient_identity(
    std::complex<double> delta, int n);

enum class ScalingMode { scaled, unit };

struct PhaseContext {
  long n = 0;
  double s = 0.0;
  double t = 0.0;
  const FunctionalSpec* functional = nullptr;
  ScalingMode mode = ScalingMode::scaled;

  double bn() const;                  // recomputed from n on every call
  double cn() const;
  std::complex<double> z0() const;    // starting point 1 / (1 - it/c_n)
  void validate() const;
};

std::complex<double> phase(const PhaseContext& ctx, std::complex<double> z);
std::complex<double> phase_derivative(const PhaseContext& ctx, std::complex<double> z);
std::complex<double> phase_second_derivative(const PhaseContext& ctx, std::complex<double> z);

// Fixed-point map g with g(z) = z exactly at zeros of phase_derivative.
std::complex<double> saddle_map(const PhaseContext& ctx, std::complex<double> z);
std::complex<double> saddle_map_derivative(const PhaseContext& ctx, std::complex<double> z);

// Iterate z <- g(z) from z0; throws if |g'(z0)| >= 0.9 (no contraction) or
// if |phase_derivative| is not below 1e-12 within 100 steps.
std::complex<double> solve_saddle(const PhaseContext& ctx);

// Direct quadrature of the defining integral along the positive real axis
// (the j^j/Gamma(j) factor is folded into the exponent, so nothing over- or
// underflows).  Truncation points keep the dropped tails below ~1e-13.
// Serves as the oracle for phi_saddle; throws when the oscillation cannot
// be resolved to the accuracy target.
std::complex<double> phi_quadrature(const PhaseContext& ctx, long j);

// One-term saddle evaluation at z0:
//   alpha * exp(j (f(z0) + 1)) / (z0 * sqrt(|f''(z0)|)),
// where alpha = exp(i theta), theta = pi/2 - arg(f''(z0))/2, is the unit
// rotation onto the steepest-descent axis (computed from the numerical
// second derivative).  The j^j/Gamma(j) normalization enters through its
// Stirling form, which makes the s = 0 case collapse to the exact
// Gamma(j,1) characteristic function.  Requires j >= 10.
std::complex<double> phi_saddle(const PhaseContext& ctx, long j);

}  // namespace grenfun

#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature for complex-valued integrands
// on finite intervals.  The error estimate on each panel is |K15 - G7|;
// panels are split until the summed estimate meets the requested absolute
// tolerance.  Oscillatory integrands can request an initial uniform split
// so that no panel spans many phase cycles.

#include <complex>
#include <functional>

namespace grenfun {

struct QuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  long evaluations = 0;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

// Integrate f over [a, b] to absolute tolerance abs_tol.  initial_panels
// pre-splits the interval; max_depth bounds recursive bisection per panel.
// Throws std::runtime_error if the error estimate cannot be brought under
// 10 * abs_tol within the evaluation budget.
QuadratureResult integrate(const ComplexIntegrand& f, double a, double b,
                           double abs_tol, int initial_panels = 1,
                           int max_depth = 48);

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      double abs_tol, int initial_panels = 1, int max_depth = 48);

}  // namespace grenfun

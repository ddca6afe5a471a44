#pragma once

// Integral functionals of a fitted step density and their standardized
// statistics.  A functional is described by a smooth h together with its
// first two derivatives; the statistic for a size-n sample is
//
//   standardized = (n * (raw - h(1)) - h''(1)/2 * log n) / b_n,
//   b_n = sqrt(3/4 * h''(1)^2 * log n),
//
// where raw is the integral of h over the fitted density.  The built-in
// functionals (squared L2 distance from the uniform level and the entropy
// integral) both have h(1) = 0.

#include <complex>
#include <functional>
#include <string>

#include "grenfun/estimator.hpp"

namespace grenfun {

struct FunctionalSpec {
  std::string name;
  std::function<std::complex<double>(std::complex<double>)> h;
  std::function<std::complex<double>(std::complex<double>)> dh;
  std::function<std::complex<double>(std::complex<double>)> d2h;
  double h_at_1 = 0.0;
  double dh_at_1 = 0.0;
  double d2h_at_1 = 0.0;
  double h_at_0 = 0.0;  // limit of h at 0+, used for zero-level stretches

  // Checks d2h_at_1 != 0 and that dh, d2h agree with central differences of
  // h at x in {0.5, 1, 2} (step 1e-5, tolerance 1e-6).
  void validate() const;
};

// h(z) = (z - 1)^2.
FunctionalSpec l2_spec();
// h(z) = z log z.
FunctionalSpec entropy_spec();

struct StatisticValue {
  double raw = 0.0;
  double standardized = 0.0;
  long n = 0;
};

// Scale b_n; requires n >= 2.
double bn_scale(const FunctionalSpec& spec, long n);
double standardize(const FunctionalSpec& spec, double raw, long n);

// Integral of h over the step density.  Zero levels contribute
// h_at_0 * length; the imaginary part of the accumulated sum must stay
// below 1e-12 (h real on the positive axis).
double integral_functional(const FunctionalSpec& spec, const StepDensity& density);

// Fit-and-evaluate conveniences (n >= 2).
StatisticValue l2_statistic(const Sample& sample);
StatisticValue entropy_statistic(const Sample& sample);
StatisticValue functional_statistic(const FunctionalSpec& spec, const StepDensity& density, long n);

// Number of strict jumps m of the fitted density, standardized as
// (m - log n) / sqrt(log n).
StatisticValue jump_count_statistic(const Sample& sample);
StatisticValue jump_count_value(long jumps, long n);

}  // namespace grenfun

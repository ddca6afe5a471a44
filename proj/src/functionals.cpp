#include "grenfun/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace grenfun {

using cplx = std::complex<double>;

void FunctionalSpec::validate() const {
  if (!h || !dh || !d2h) throw std::invalid_argument("FunctionalSpec: missing evaluator");
  if (d2h_at_1 == 0.0)
    throw std::invalid_argument("FunctionalSpec: h''(1) must be nonzero");
  const double eps = 1e-5;
  for (double x : {0.5, 1.0, 2.0}) {
    // dh against a central difference of h, d2h against one of dh; a second
    // difference of h itself would drown in rounding at this step size.
    cplx fd1 = (h(cplx(x + eps)) - h(cplx(x - eps))) / (2.0 * eps);
    cplx fd2 = (dh(cplx(x + eps)) - dh(cplx(x - eps))) / (2.0 * eps);
    if (std::abs(fd1 - dh(cplx(x))) > 1e-6)
      throw std::invalid_argument("FunctionalSpec: dh inconsistent with h at x=" + std::to_string(x));
    if (std::abs(fd2 - d2h(cplx(x))) > 1e-6)
      throw std::invalid_argument("FunctionalSpec: d2h inconsistent with dh at x=" + std::to_string(x));
  }
}

FunctionalSpec l2_spec() {
  FunctionalSpec s;
  s.name = "l2";
  s.h = [](cplx z) { return (z - 1.0) * (z - 1.0); };
  s.dh = [](cplx z) { return 2.0 * (z - 1.0); };
  s.d2h = [](cplx) { return cplx(2.0, 0.0); };
  s.h_at_1 = 0.0;
  s.dh_at_1 = 0.0;
  s.d2h_at_1 = 2.0;
  s.h_at_0 = 1.0;
  return s;
}

FunctionalSpec entropy_spec() {
  FunctionalSpec s;
  s.name = "entropy";
  s.h = [](cplx z) { return z * std::log(z); };
  s.dh = [](cplx z) { return 1.0 + std::log(z); };
  s.d2h = [](cplx z) { return 1.0 / z; };
  s.h_at_1 = 0.0;
  s.dh_at_1 = 1.0;
  s.d2h_at_1 = 1.0;
  s.h_at_0 = 0.0;  // z log z -> 0
  return s;
}

double bn_scale(const FunctionalSpec& spec, long n) {
  if (n < 2) throw std::invalid_argument("bn_scale: n >= 2 required");
  return std::sqrt(0.75 * spec.d2h_at_1 * spec.d2h_at_1 * std::log(static_cast<double>(n)));
}

double standardize(const FunctionalSpec& spec, double raw, long n) {
  const double logn = std::log(static_cast<double>(n));
  return (static_cast<double>(n) * (raw - spec.h_at_1) - 0.5 * spec.d2h_at_1 * logn) /
         bn_scale(spec, n);
}

double integral_functional(const FunctionalSpec& spec, const StepDensity& density) {
  cplx total(0.0, 0.0);
  for (std::size_t i = 0; i < density.levels.size(); ++i) {
    const double len = density.breakpoints[i + 1] - density.breakpoints[i];
    const double level = density.levels[i];
    if (level < 0.0)
      throw std::invalid_argument("integral_functional: negative level");
    if (level == 0.0)
      total += spec.h_at_0 * len;
    else
      total += spec.h(cplx(level)) * len;
  }
  if (std::fabs(total.imag()) > 1e-12 * std::max(1.0, std::fabs(total.real())))
    throw std::runtime_error("integral_functional: nonreal value for real levels");
  return total.real();
}

StatisticValue functional_statistic(const FunctionalSpec& spec, const StepDensity& density,
                                    long n) {
  if (n < 2) throw std::invalid_argument("functional_statistic: n >= 2 required");
  StatisticValue v;
  v.n = n;
  v.raw = integral_functional(spec, density);
  v.standardized = standardize(spec, v.raw, n);
  return v;
}

StatisticValue l2_statistic(const Sample& sample) {
  return functional_statistic(l2_spec(), grenander(sample), sample.n());
}

StatisticValue entropy_statistic(const Sample& sample) {
  return functional_statistic(entropy_spec(), grenander(sample), sample.n());
}

StatisticValue jump_count_value(long jumps, long n) {
  if (n < 2) throw std::invalid_argument("jump_count_value: n >= 2 required");
  const double logn = std::log(static_cast<double>(n));
  StatisticValue v;
  v.n = n;
  v.raw = static_cast<double>(jumps);
  v.standardized = (v.raw - logn) / std::sqrt(logn);
  return v;
}

StatisticValue jump_count_statistic(const Sample& sample) {
  return jump_count_value(grenander(sample).jump_count(), sample.n());
}

}  // namespace grenfun

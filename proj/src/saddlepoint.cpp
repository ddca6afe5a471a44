#include "grenfun/saddlepoint.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "grenfun/quadrature.hpp"

namespace grenfun {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Compensated complex accumulator; the series recurrence sums up to 10^4
// terms and the identity check demands ~1e-10 relative accuracy.
struct KahanComplex {
  cd sum{0.0, 0.0};
  cd comp{0.0, 0.0};
  void add(cd v) {
    cd y = v - comp;
    cd t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

ComplexSeries series_exp_partial_log(cd delta, int order) {
  if (order < 0 || order > 10000)
    throw std::invalid_argument("series_exp_partial_log: order must be in [0, 10^4]");
  ComplexSeries out;
  out.coeffs.assign(static_cast<std::size_t>(order) + 1, cd(0.0, 0.0));
  out.coeffs[0] = cd(1.0, 0.0);
  // exp' = (sum_j z^{j-1}) * exp gives k f_k = delta * sum_{i<k} f_i.
  KahanComplex prefix;
  for (int k = 1; k <= order; ++k) {
    prefix.add(out.coeffs[static_cast<std::size_t>(k) - 1]);
    out.coeffs[static_cast<std::size_t>(k)] = delta * prefix.sum / static_cast<double>(k);
  }
  return out;
}

cd rising_ratio_product(cd delta, int n) {
  if (n < 0 || n > 10000)
    throw std::invalid_argument("rising_ratio_product: n must be in [0, 10^4]");
  cd prod(1.0, 0.0);
  for (int j = 1; j <= n; ++j)
    prod *= cd(1.0, 0.0) + (delta - cd(1.0, 0.0)) / static_cast<double>(j);
  return prod;
}

std::pair<cd, cd> cauchy_coefficient_identity(cd delta, int n) {
  if (n < 0 || n > 1000)
    throw std::invalid_argument("cauchy_coefficient_identity: n must be in [0, 10^3]");
  ComplexSeries series = series_exp_partial_log(delta, n);
  return {series.coeffs[static_cast<std::size_t>(n)], rising_ratio_product(delta, n)};
}

void PhaseContext::validate() const {
  if (n < 2) throw std::invalid_argument("PhaseContext: n must be >= 2");
  if (functional == nullptr)
    throw std::invalid_argument("PhaseContext: functional must be set");
  if (functional->d2h_at_1 == 0.0)
    throw std::invalid_argument("PhaseContext: functional needs nonzero curvature at 1");
}

double PhaseContext::bn() const { return bn_scale(*functional, n); }

double PhaseContext::cn() const {
  return mode == ScalingMode::scaled ? std::sqrt(static_cast<double>(n)) : 1.0;
}

cd PhaseContext::z0() const { return 1.0 / (cd(1.0, 0.0) - cd(0.0, t / cn())); }

namespace {

void require_right_half(cd z, const char* who) {
  if (!(z.real() > 0.0)) {
    std::ostringstream msg;
    msg << who << ": Re z must be positive, got " << z.real();
    throw std::domain_error(msg.str());
  }
}

}  // namespace

cd phase(const PhaseContext& ctx, cd z) {
  require_right_half(z, "phase");
  const FunctionalSpec& fs = *ctx.functional;
  cd w = 1.0 / z;
  cd is(0.0, ctx.s);
  cd it(0.0, ctx.t);
  cd hump = (fs.h(w) - fs.h_at_1) * z + fs.dh_at_1 * (z - 1.0);
  return is * hump / ctx.bn() + it * (z - 1.0) / ctx.cn() - z + std::log(z);
}

cd phase_derivative(const PhaseContext& ctx, cd z) {
  require_right_half(z, "phase_derivative");
  const FunctionalSpec& fs = *ctx.functional;
  cd w = 1.0 / z;
  cd is(0.0, ctx.s);
  cd it(0.0, ctx.t);
  cd hump = fs.h(w) - fs.h_at_1 - fs.dh(w) * w + fs.dh_at_1;
  return is * hump / ctx.bn() + it / ctx.cn() - 1.0 + w;
}

cd phase_second_derivative(const PhaseContext& ctx, cd z) {
  require_right_half(z, "phase_second_derivative");
  const FunctionalSpec& fs = *ctx.functional;
  cd w = 1.0 / z;
  cd is(0.0, ctx.s);
  return is * fs.d2h(w) * w * w * w / ctx.bn() - w * w;
}

cd saddle_map(const PhaseContext& ctx, cd z) {
  require_right_half(z, "saddle_map");
  const FunctionalSpec& fs = *ctx.functional;
  cd w = 1.0 / z;
  cd is(0.0, ctx.s);
  cd hump = (fs.h(w) - fs.h_at_1) * z - fs.dh(w) + fs.dh_at_1 * z;
  return ctx.z0() * (1.0 + is * hump / ctx.bn());
}

cd saddle_map_derivative(const PhaseContext& ctx, cd z) {
  require_right_half(z, "saddle_map_derivative");
  const FunctionalSpec& fs = *ctx.functional;
  cd w = 1.0 / z;
  cd is(0.0, ctx.s);
  cd hump = fs.h(w) - fs.h_at_1 - fs.dh(w) * w + fs.dh_at_1 + fs.d2h(w) * w * w;
  return ctx.z0() * is * hump / ctx.bn();
}

cd solve_saddle(const PhaseContext& ctx) {
  ctx.validate();
  cd z = ctx.z0();
  double contraction = std::abs(saddle_map_derivative(ctx, z));
  if (contraction >= 0.9) {
    std::ostringstream msg;
    msg << "solve_saddle: |g'(z0)| = " << contraction
        << " >= 0.9, fixed-point iteration not contractive";
    throw std::runtime_error(msg.str());
  }
  for (int iter = 0; iter < 100; ++iter) {
    if (std::abs(phase_derivative(ctx, z)) < 1e-12) return z;
    z = saddle_map(ctx, z);
    if (!(z.real() > 0.0))
      throw std::runtime_error("solve_saddle: iterate left the right half plane");
  }
  if (std::abs(phase_derivative(ctx, z)) < 1e-12) return z;
  throw std::runtime_error("solve_saddle: no convergence within 100 iterations");
}

namespace {

// Real part of the oscillatory hump at real x > 0; used only to size the
// initial panel count from the endpoint phase magnitudes.
double hump_at(const PhaseContext& ctx, double x) {
  const FunctionalSpec& fs = *ctx.functional;
  cd w(1.0 / x, 0.0);
  cd v = (fs.h(w) - fs.h_at_1) * x + fs.dh_at_1 * (x - 1.0);
  return std::abs(v);
}

}  // namespace

cd phi_quadrature(const PhaseContext& ctx, long j) {
  ctx.validate();
  if (j < 1) throw std::invalid_argument("phi_quadrature: j must be >= 1");
  const double jd = static_cast<double>(j);
  const double log_c = jd * std::log(jd) - std::lgamma(jd);

  // Lower cutoff from the crude magnitude bound
  //   int_0^a x^{j-1} e^{logC} dx = e^{logC} a^j / j <= 1e-13,
  // valid for every (s, t) since |e^{j f}| = e^{j(log x - x)} on the axis.
  double x_lo = std::exp((std::log(1e-13 * jd) - log_c) / jd);
  if (x_lo > 0.5) x_lo = 0.5;

  // Upper cutoff where logC + (j-1) log x - j x <= -30; beyond it the
  // integrand decays at least like e^{-(x - x_hi)}.
  double x_hi = 2.0;
  while (log_c + (jd - 1.0) * std::log(x_hi) - jd * x_hi > -30.0) x_hi *= 1.25;

  double phase_span = jd * (std::abs(ctx.s) * (hump_at(ctx, x_lo) + hump_at(ctx, x_hi)) / ctx.bn() +
                            std::abs(ctx.t) * (x_hi - x_lo) / ctx.cn());
  int panels = static_cast<int>(phase_span / 3.0) + 8;
  if (panels > 4096) panels = 4096;

  ComplexIntegrand integrand = [&ctx, jd, log_c](double x) -> cd {
    if (x <= 0.0) return cd(0.0, 0.0);
    cd f = phase(ctx, cd(x, 0.0));
    return std::exp(cd(log_c, 0.0) + jd * f) / x;
  };
  QuadratureResult res = integrate(integrand, x_lo, x_hi, 5e-12, panels);
  return res.value;
}

cd phi_saddle(const PhaseContext& ctx, long j) {
  ctx.validate();
  if (j < 10)
    throw std::invalid_argument("phi_saddle: one-term expansion needs j >= 10");
  cd z0 = ctx.z0();
  cd f0 = phase(ctx, z0);
  cd fpp = phase_second_derivative(ctx, z0);
  double mag = std::abs(fpp);
  if (!(mag > 0.0))
    throw std::runtime_error("phi_saddle: vanishing second derivative at z0");
  double theta = kPi / 2.0 - 0.5 * std::arg(fpp);
  cd alpha = std::exp(cd(0.0, theta));
  return alpha * std::exp(static_cast<double>(j) * (f0 + 1.0)) / (z0 * std::sqrt(mag));
}

}  // namespace grenfun

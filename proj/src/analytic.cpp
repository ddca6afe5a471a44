#include "grenfun/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "grenfun/quadrature.hpp"

namespace grenfun {

using cplx = std::complex<double>;

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240;
constexpr double kSeriesCutoff = 1e-4;  // switch to the series integral below this y

// Integral of (e^{-z y} - 1)/y over [0, y0] by the exponential series:
// sum_k (-z)^k y0^k / (k * k!).  Converges immediately for |z| y0 << 1.
cplx small_y_integral(cplx z, double y0) {
  cplx term(1.0, 0.0);
  cplx sum(0.0, 0.0);
  for (int k = 1; k <= 24; ++k) {
    term *= -z * y0 / static_cast<double>(k);
    cplx contribution = term / static_cast<double>(k);
    sum += contribution;
    if (std::abs(contribution) < 1e-20) break;
  }
  return sum;
}

}  // namespace

cplx charfun_VW_finite(long n, double t, double u) {
  if (n < 1) throw std::invalid_argument("charfun_VW_finite: n >= 1 required");
  const double root_n = std::sqrt(static_cast<double>(n));
  const cplx w(1.0, -t / root_n);
  if (!(w.real() > 0.0))
    throw std::domain_error("charfun_VW_finite: branch argument left the right half plane");
  // Per-j term: exp(j * zeta) with zeta = i(u/n - t/sqrt n) - log w, so the
  // whole sum needs one complex exponential and one multiply per j.
  const cplx zeta = cplx(0.0, u / static_cast<double>(n) - t / root_n) - std::log(w);
  const cplx step = std::exp(zeta);
  cplx power(1.0, 0.0);
  cplx sum(0.0, 0.0);
  for (long j = 1; j <= n; ++j) {
    power *= step;
    sum += (power - 1.0) / static_cast<double>(j);
  }
  return std::exp(sum);
}

cplx charfun_VW_limit_quadrature(double t, double u) {
  const cplx z(0.5 * t * t, -u);
  if (z == cplx(0.0, 0.0)) return cplx(1.0, 0.0);
  cplx exponent = small_y_integral(z, kSeriesCutoff);
  QuadratureResult tail = integrate(
      [&z](double y) { return (std::exp(-z * y) - 1.0) / y; }, kSeriesCutoff, 1.0,
      0.5e-10, 8);
  exponent += tail.value;
  return std::exp(exponent);
}

cplx incomplete_gamma_zero(cplx z) {
  if (!(z.real() >= 0.0) || z == cplx(0.0, 0.0))
    throw std::domain_error("incomplete_gamma_zero: need Re z >= 0, z != 0");
  const double az = std::abs(z);
  if (az <= 4.0) {
    // -gamma - log z - sum_{k>=1} (-z)^k / (k k!)
    cplx term(1.0, 0.0);
    cplx sum(0.0, 0.0);
    for (int k = 1; k <= 80; ++k) {
      term *= -z / static_cast<double>(k);
      cplx contribution = term / static_cast<double>(k);
      sum += contribution;
      if (std::abs(contribution) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -kEulerGamma - std::log(z) - sum;
  }
  // Modified Lentz for e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...)))).
  const double tiny = 1e-300;
  cplx f = z + 1.0;
  if (f == cplx(0.0, 0.0)) f = tiny;
  cplx C = f;
  cplx D(0.0, 0.0);
  for (int k = 1; k <= 20000; ++k) {
    const double a = -static_cast<double>(k) * static_cast<double>(k);
    const cplx b = z + static_cast<double>(2 * k + 1);
    D = b + a * D;
    if (D == cplx(0.0, 0.0)) D = tiny;
    C = b + a / C;
    if (C == cplx(0.0, 0.0)) C = tiny;
    D = 1.0 / D;
    const cplx delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-15) return std::exp(-z) / f;
  }
  throw std::runtime_error("incomplete_gamma_zero: continued fraction did not converge");
}

cplx charfun_VW_closed_form(double t, double u) {
  const cplx z(0.5 * t * t, -u);
  if (z == cplx(0.0, 0.0)) return cplx(1.0, 0.0);
  return std::exp(-kEulerGamma - incomplete_gamma_zero(z) - std::log(z));
}

double levy_density(double v, double w) {
  if (!(w > 0.0) || w >= 1.0) return 0.0;
  const double s = v / std::sqrt(w);
  const double phi = std::exp(-0.5 * s * s) / std::sqrt(2.0 * 3.14159265358979323846);
  return phi * std::pow(w, -1.5);
}

double lk_exponent_check(double t, double u) {
  const double s_cut = 8.5;  // the normal density beyond is ~1e-17
  const double w0 = kSeriesCutoff;

  // Inner v-integral at fixed w, v = sqrt(w) s:
  //   integral (e^{i(tv+uw)} - 1) levy_density dv
  //     = [ e^{iuw} J(w) - J0 ] / w,  J(w) = int e^{i t sqrt(w) s} phi(s) ds.
  // J0 uses the same truncation so the cutoff error cancels.
  auto phi = [](double s) {
    return std::exp(-0.5 * s * s) / std::sqrt(2.0 * 3.14159265358979323846);
  };
  const double J0 =
      integrate_real([&phi](double s) { return phi(s); }, -s_cut, s_cut, 1e-13, 8);

  auto inner = [&](double w) -> cplx {
    QuadratureResult J = integrate(
        [&](double s) {
          return std::exp(cplx(0.0, t * std::sqrt(w) * s)) * phi(s);
        },
        -s_cut, s_cut, 1e-12, 8);
    return (std::exp(cplx(0.0, u * w)) * J.value - J0) / w;
  };

  QuadratureResult lhs = integrate(inner, w0, 1.0, 1e-8, 16);

  // The 1-D exponent integrand over the same range.
  const cplx z(0.5 * t * t, -u);
  QuadratureResult rhs = integrate(
      [&z](double y) { return (std::exp(-z * y) - 1.0) / y; }, w0, 1.0, 1e-10, 8);

  return std::abs(lhs.value - rhs.value);
}

}  // namespace grenfun

#include "grenfun/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace grenfun {

namespace {

// (G7, K15) abscissae and weights on [-1, 1].  Positive nodes only; the rule
// is symmetric.  Values from the usual QUADPACK tables.
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss weights align with kKronrodNodes[1], [3], [5], [7].
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
};

Panel evaluate_panel(const ComplexIntegrand& f, double a, double b, long& evals) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::complex<double> kronrod(0.0, 0.0);
  std::complex<double> gauss(0.0, 0.0);
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    std::complex<double> sum = f(mid + dx);
    evals += 1;
    if (i < 7) {
      sum += f(mid - dx);
      evals += 1;
    }
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const ComplexIntegrand& f, double a, double b,
                           double abs_tol, int initial_panels, int max_depth) {
  if (!(b > a)) {
    if (a == b) return {};
    throw std::invalid_argument("integrate: requires a <= b");
  }
  if (initial_panels < 1) initial_panels = 1;
  if (initial_panels > 262144) initial_panels = 262144;

  const long max_evals = 40'000'000;
  long evals = 0;

  std::vector<Panel> active;
  active.reserve(static_cast<std::size_t>(initial_panels));
  for (int i = 0; i < initial_panels; ++i) {
    double pa = a + (b - a) * static_cast<double>(i) / initial_panels;
    double pb = a + (b - a) * static_cast<double>(i + 1) / initial_panels;
    active.push_back(evaluate_panel(f, pa, pb, evals));
  }

  // Refine the worst panel until the total estimate meets tolerance.
  std::vector<int> depth(active.size(), 0);
  for (;;) {
    double total_err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      total_err += active[i].error;
      if (active[i].error > active[worst].error) worst = i;
    }
    if (total_err <= abs_tol) break;
    if (evals > max_evals || depth[worst] >= max_depth) {
      if (total_err <= 10.0 * abs_tol) break;
      throw std::runtime_error("integrate: accuracy target not met");
    }
    Panel p = active[worst];
    double mid = 0.5 * (p.a + p.b);
    Panel left = evaluate_panel(f, p.a, mid, evals);
    Panel right = evaluate_panel(f, mid, p.b, evals);
    int d = depth[worst] + 1;
    active[worst] = left;
    depth[worst] = d;
    active.push_back(right);
    depth.push_back(d);
  }

  QuadratureResult out;
  for (const Panel& p : active) {
    out.value += p.value;
    out.error_estimate += p.error;
  }
  out.evaluations = evals;
  return out;
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      double abs_tol, int initial_panels, int max_depth) {
  QuadratureResult r = integrate([&f](double x) { return std::complex<double>(f(x), 0.0); },
                                 a, b, abs_tol, initial_panels, max_depth);
  return r.value.real();
}

}  // namespace grenfun

#include "grenfun/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "grenfun/analytic.hpp"
#include "grenfun/functionals.hpp"
#include "grenfun/representation.hpp"
#include "grenfun/rng.hpp"
#include "grenfun/saddlepoint.hpp"

namespace grenfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double kolmogorov_pvalue(double x) {
  if (!(x > 0.0)) return 1.0;
  double p;
  if (x >= 1.18) {
    // Alternating tail series, sharp for large x.
    double sum = 0.0;
    for (int k = 1; k <= 16; ++k) {
      double term = std::exp(-2.0 * k * k * x * x);
      sum += (k % 2 == 1) ? term : -term;
      if (term < 1e-17) break;
    }
    p = 2.0 * sum;
  } else {
    // Theta-function form, sharp for small x where the series above is slow.
    double sum = 0.0;
    for (int k = 1; k <= 16; ++k) {
      double m = 2.0 * k - 1.0;
      double term = std::exp(-m * m * kPi * kPi / (8.0 * x * x));
      sum += term;
      if (term < 1e-300 || term < 1e-17 * sum) break;
    }
    p = 1.0 - std::sqrt(2.0 * kPi) / x * sum;
  }
  return std::min(1.0, std::max(0.0, p));
}

KsResult ks_one_sample(std::vector<double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double f = cdf(values[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  double root = std::sqrt(n);
  KsResult res;
  res.statistic = d;
  res.pvalue = kolmogorov_pvalue((root + 0.12 + 0.11 / root) * d);
  return res;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  double ne = na * nb / (na + nb);
  double root = std::sqrt(ne);
  KsResult res;
  res.statistic = d;
  res.pvalue = kolmogorov_pvalue((root + 0.12 + 0.11 / root) * d);
  return res;
}

std::vector<HistogramBin> make_histogram(const std::vector<double>& values, int bins) {
  if (bins < 1) throw std::invalid_argument("make_histogram: bins must be >= 1");
  if (values.empty()) return {};
  auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  double lo = *mn_it, hi = *mx_it;
  if (lo == hi) return {HistogramBin{lo, hi, static_cast<long>(values.size())}};
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  double width = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)].left = lo + b * width;
    out[static_cast<std::size_t>(b)].right = lo + (b + 1) * width;
  }
  out.back().right = hi;
  for (double v : values) {
    int b = static_cast<int>((v - lo) / width);
    b = std::min(b, bins - 1);
    ++out[static_cast<std::size_t>(b)].count;
  }
  return out;
}

ExperimentKind parse_kind(const std::string& name) {
  if (name == "jumps") return ExperimentKind::jumps;
  if (name == "l2") return ExperimentKind::l2;
  if (name == "entropy") return ExperimentKind::entropy;
  if (name == "representation-l2") return ExperimentKind::representation_l2;
  if (name == "representation-entropy") return ExperimentKind::representation_entropy;
  if (name == "charfun") return ExperimentKind::charfun;
  if (name == "saddle") return ExperimentKind::saddle;
  if (name == "cauchy") return ExperimentKind::cauchy;
  if (name == "repr-profile") return ExperimentKind::repr_profile;
  throw std::invalid_argument("unknown experiment kind: " + name);
}

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::jumps: return "jumps";
    case ExperimentKind::l2: return "l2";
    case ExperimentKind::entropy: return "entropy";
    case ExperimentKind::representation_l2: return "representation-l2";
    case ExperimentKind::representation_entropy: return "representation-entropy";
    case ExperimentKind::charfun: return "charfun";
    case ExperimentKind::saddle: return "saddle";
    case ExperimentKind::cauchy: return "cauchy";
    case ExperimentKind::repr_profile: return "repr-profile";
  }
  throw std::logic_error("kind_name: unhandled kind");
}

void ExperimentConfig::validate() const {
  if (n < 2) throw std::invalid_argument("ExperimentConfig: n must be >= 2");
  if (reps < 1) throw std::invalid_argument("ExperimentConfig: reps must be >= 1");
  if (workers < 1 || workers > 256)
    throw std::invalid_argument("ExperimentConfig: workers must be in [1, 256]");
}

namespace {

struct RepOutcome {
  double value = 0.0;
  double cross = 0.0;
};

// Runs body(rep, rng) for each replication with a per-replication
// substream; the static partition keeps outputs independent of the
// worker count.
void run_replicated(const ExperimentConfig& cfg,
                    const std::function<RepOutcome(long, Rng&)>& body,
                    std::vector<double>& values, std::vector<double>& cross) {
  if (cfg.reps < 1)
    throw std::invalid_argument("run_experiment: this kind needs reps >= 1");
  values.assign(static_cast<std::size_t>(cfg.reps), 0.0);
  cross.assign(static_cast<std::size_t>(cfg.reps), 0.0);
  long workers = std::min<long>(cfg.workers, cfg.reps);
  auto work = [&](long lo, long hi, std::exception_ptr* err) {
    try {
      for (long r = lo; r < hi; ++r) {
        Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(r));
        RepOutcome out = body(r, rng);
        values[static_cast<std::size_t>(r)] = out.value;
        cross[static_cast<std::size_t>(r)] = out.cross;
      }
    } catch (...) {
      *err = std::current_exception();
    }
  };
  if (workers <= 1) {
    std::exception_ptr err;
    work(0, cfg.reps, &err);
    if (err) std::rethrow_exception(err);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  long chunk = (cfg.reps + workers - 1) / workers;
  for (long w = 0; w < workers; ++w) {
    long lo = w * chunk;
    long hi = std::min(cfg.reps, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(work, lo, hi, &errors[static_cast<std::size_t>(w)]);
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

void summarize(const std::vector<double>& values, ExperimentResult& res) {
  const std::size_t n = values.size();
  if (n == 0) {
    res.mean = res.variance = res.skewness = kNaN;
    return;
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0;
  for (double v : values) {
    double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  res.mean = mean;
  res.variance = n >= 2 ? m2 / static_cast<double>(n - 1) : 0.0;
  double pop_var = m2 / static_cast<double>(n);
  res.skewness = (n >= 3 && pop_var > 0.0)
                     ? (m3 / static_cast<double>(n)) / std::pow(pop_var, 1.5)
                     : kNaN;
}

void attach_normal_ks(ExperimentResult& res) {
  KsResult ks = ks_one_sample(res.values, normal_cdf);
  res.ks_statistic = ks.statistic;
  res.ks_pvalue = ks.pvalue;
}

std::vector<double> simulate_uniform_sample(long n, Rng& rng) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) x = rng.uniform_pos();
  return xs;
}

void run_jumps(const ExperimentConfig& cfg, ExperimentResult& res) {
  if (cfg.n < 2) throw std::invalid_argument("jumps experiment needs n >= 2");
  std::vector<double> raw;
  run_replicated(cfg,
                 [&cfg](long, Rng& rng) {
                   JumpProfile profile = sample_profile_conditional(cfg.n, rng);
                   long m = profile.block_count();
                   return RepOutcome{jump_count_value(m, cfg.n).standardized,
                                     static_cast<double>(m)};
                 },
                 res.values, raw);
  summarize(res.values, res);
  attach_normal_ks(res);
  double raw_mean = 0.0;
  for (double v : raw) raw_mean += v;
  raw_mean /= static_cast<double>(raw.size());
  double raw_var = 0.0;
  for (double v : raw) raw_var += (v - raw_mean) * (v - raw_mean);
  raw_var /= std::max<double>(1.0, static_cast<double>(raw.size()) - 1.0);
  double sq_sum = 0.0;
  for (long j = cfg.n; j >= 1; --j) sq_sum += 1.0 / (static_cast<double>(j) * j);
  res.details["raw_mean"] = raw_mean;
  res.details["raw_variance"] = raw_var;
  res.details["expected_raw_mean"] = harmonic(cfg.n);
  res.details["expected_raw_variance"] = harmonic(cfg.n) - sq_sum;
}

void run_direct_functional(const ExperimentConfig& cfg, const FunctionalSpec& spec,
                           ExperimentResult& res) {
  if (cfg.n < 2) throw std::invalid_argument("functional experiment needs n >= 2");
  std::vector<double> cross;
  run_replicated(cfg,
                 [&cfg, &spec](long, Rng& rng) {
                   Sample sample(simulate_uniform_sample(cfg.n, rng));
                   StepDensity density = grenander(sample);
                   StatisticValue direct = functional_statistic(spec, density, cfg.n);
                   std::vector<Block> blocks = decompose_blocks(density, sample);
                   StatisticValue via_blocks = representation_statistic(blocks, cfg.n, spec);
                   return RepOutcome{direct.standardized,
                                     std::abs(direct.standardized - via_blocks.standardized)};
                 },
                 res.values, cross);
  summarize(res.values, res);
  attach_normal_ks(res);
  res.max_cross_check_error = *std::max_element(cross.begin(), cross.end());
  res.details["max_block_sum_discrepancy"] = res.max_cross_check_error;
}

void run_representation_functional(const ExperimentConfig& cfg, const FunctionalSpec& spec,
                                   ExperimentResult& res) {
  if (cfg.n < 2) throw std::invalid_argument("representation experiment needs n >= 2");
  std::vector<double> raw;
  run_replicated(cfg,
                 [&cfg, &spec](long, Rng& rng) {
                   ConditionalDraw draw = sample_conditional(cfg.n, rng);
                   StatisticValue sv = representation_statistic(draw, spec);
                   return RepOutcome{sv.standardized, sv.raw};
                 },
                 res.values, raw);
  summarize(res.values, res);
  attach_normal_ks(res);
  double raw_mean = 0.0;
  for (double v : raw) raw_mean += v;
  res.details["raw_mean"] = raw_mean / static_cast<double>(raw.size());
}

void run_charfun(const ExperimentConfig& cfg, ExperimentResult& res) {
  struct GridPoint {
    double t, u;
  };
  const std::vector<GridPoint> points = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {2.0, -1.0}};
  VWSampler sampler(cfg.n);
  std::vector<double> sum_re(points.size(), 0.0), sum_im(points.size(), 0.0);
  for (long r = 0; r < cfg.reps; ++r) {
    Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(r));
    auto [v, w] = sampler.draw(rng);
    for (std::size_t k = 0; k < points.size(); ++k) {
      double arg = points[k].t * v + points[k].u * w;
      sum_re[k] += std::cos(arg);
      sum_im[k] += std::sin(arg);
    }
  }
  double mc_se = std::sqrt(2.0 / static_cast<double>(cfg.reps));
  res.details["mc_se"] = mc_se;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::complex<double> empirical(sum_re[k] / static_cast<double>(cfg.reps),
                                   sum_im[k] / static_cast<double>(cfg.reps));
    std::complex<double> exact = charfun_VW_finite(cfg.n, points[k].t, points[k].u);
    double err = std::abs(empirical - exact);
    res.values.push_back(err);
    rows.push_back({{"t", points[k].t},
                    {"u", points[k].u},
                    {"empirical_re", empirical.real()},
                    {"empirical_im", empirical.imag()},
                    {"exact_re", exact.real()},
                    {"exact_im", exact.imag()},
                    {"abs_error", err}});
  }
  res.details["points"] = rows;
  summarize(res.values, res);
  res.ks_statistic = kNaN;
  res.ks_pvalue = kNaN;
  res.max_cross_check_error = *std::max_element(res.values.begin(), res.values.end());
}

void run_saddle(const ExperimentConfig& cfg, ExperimentResult& res) {
  if (cfg.n < 2) throw std::invalid_argument("saddle experiment needs n >= 2");
  FunctionalSpec spec = l2_spec();
  PhaseContext ctx;
  ctx.n = cfg.n;
  ctx.s = 1.0;
  ctx.t = 1.0;
  ctx.functional = &spec;
  ctx.mode = ScalingMode::scaled;
  nlohmann::json rows = nlohmann::json::array();
  for (long j : {10L, 100L, 1000L}) {
    std::complex<double> approx = phi_saddle(ctx, j);
    std::complex<double> exact = phi_quadrature(ctx, j);
    double err = std::abs(approx / exact - 1.0);
    res.values.push_back(err);
    rows.push_back({{"j", j},
                    {"saddle_re", approx.real()},
                    {"saddle_im", approx.imag()},
                    {"quadrature_re", exact.real()},
                    {"quadrature_im", exact.imag()},
                    {"relative_error", err}});
  }
  res.details["s"] = ctx.s;
  res.details["t"] = ctx.t;
  res.details["rows"] = rows;
  summarize(res.values, res);
  res.ks_statistic = kNaN;
  res.ks_pvalue = kNaN;
  res.max_cross_check_error = *std::max_element(res.values.begin(), res.values.end());
}

void run_cauchy(const ExperimentConfig& cfg, ExperimentResult& res) {
  int order = static_cast<int>(std::min<long>(cfg.n, 1000));
  if (order < 1) throw std::invalid_argument("cauchy experiment needs n >= 1");
  using cd = std::complex<double>;
  const std::vector<cd> deltas = {cd(0.5, 0.0), cd(2.0, 0.0), cd(1.0, 1.0),
                                  std::exp(cd(0.0, 1.0 / std::sqrt(std::log(50.0))))};
  nlohmann::json rows = nlohmann::json::array();
  for (cd delta : deltas) {
    ComplexSeries series = series_exp_partial_log(delta, order);
    cd prod(1.0, 0.0);
    double worst = 0.0;
    for (int j = 1; j <= order; ++j) {
      prod *= cd(1.0, 0.0) + (delta - cd(1.0, 0.0)) / static_cast<double>(j);
      double rel = std::abs(series.coeffs[static_cast<std::size_t>(j)] - prod) / std::abs(prod);
      worst = std::max(worst, rel);
    }
    res.values.push_back(worst);
    rows.push_back({{"delta_re", delta.real()},
                    {"delta_im", delta.imag()},
                    {"max_relative_error", worst}});
  }
  res.details["order"] = order;
  res.details["rows"] = rows;
  summarize(res.values, res);
  res.ks_statistic = kNaN;
  res.ks_pvalue = kNaN;
  res.max_cross_check_error = *std::max_element(res.values.begin(), res.values.end());
}

void run_repr_profile(const ExperimentConfig& cfg, ExperimentResult& res) {
  if (cfg.n > 12)
    throw std::invalid_argument("repr-profile experiment needs n <= 12 (enumeration oracle)");
  std::map<std::vector<int>, double> exact = conditional_profile_pmf_oracle(static_cast<int>(cfg.n));
  std::map<std::vector<int>, long> counts;
  for (long r = 0; r < cfg.reps; ++r) {
    Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(r));
    JumpProfile profile = sample_profile_conditional(cfg.n, rng);
    ++counts[profile.partition()];
  }
  double tv = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [partition, p] : exact) {
    auto it = counts.find(partition);
    double emp = it == counts.end()
                     ? 0.0
                     : static_cast<double>(it->second) / static_cast<double>(cfg.reps);
    double diff = std::abs(emp - p);
    tv += diff;
    res.values.push_back(diff);
    rows.push_back({{"partition", partition}, {"exact", p}, {"empirical", emp}});
  }
  for (const auto& [partition, c] : counts) {
    if (exact.count(partition) == 0)
      throw std::runtime_error("repr-profile: sampler produced a partition outside the oracle support");
  }
  res.tv_distance = 0.5 * tv;
  res.details["rows"] = rows;
  summarize(res.values, res);
  res.ks_statistic = kNaN;
  res.ks_pvalue = kNaN;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult res;
  res.config = config;
  res.tv_distance = kNaN;
  auto start = std::chrono::steady_clock::now();
  switch (config.kind) {
    case ExperimentKind::jumps:
      run_jumps(config, res);
      break;
    case ExperimentKind::l2:
      run_direct_functional(config, l2_spec(), res);
      break;
    case ExperimentKind::entropy:
      run_direct_functional(config, entropy_spec(), res);
      break;
    case ExperimentKind::representation_l2:
      run_representation_functional(config, l2_spec(), res);
      break;
    case ExperimentKind::representation_entropy:
      run_representation_functional(config, entropy_spec(), res);
      break;
    case ExperimentKind::charfun:
      run_charfun(config, res);
      break;
    case ExperimentKind::saddle:
      run_saddle(config, res);
      break;
    case ExperimentKind::cauchy:
      run_cauchy(config, res);
      break;
    case ExperimentKind::repr_profile:
      run_repr_profile(config, res);
      break;
  }
  res.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

nlohmann::json ExperimentResult::to_json(int histogram_bins) const {
  nlohmann::json out;
  out["config"] = {{"kind", kind_name(config.kind)},
                   {"n", config.n},
                   {"reps", config.reps},
                   {"seed", config.seed},
                   {"workers", config.workers}};
  out["summary"] = {{"count", values.size()},
                    {"mean", mean},
                    {"variance", variance},
                    {"skewness", skewness},
                    {"ks_statistic", ks_statistic},
                    {"ks_pvalue", ks_pvalue},
                    {"max_cross_check_error", max_cross_check_error},
                    {"tv_distance", tv_distance},
                    {"wall_time_s", wall_time_s}};
  out["details"] = details;
  if (histogram_bins > 0) {
    nlohmann::json hist = nlohmann::json::array();
    for (const HistogramBin& bin : make_histogram(values, histogram_bins))
      hist.push_back({{"left", bin.left}, {"right", bin.right}, {"count", bin.count}});
    out["histogram"] = hist;
  }
  return out;
}

void ExperimentResult::write_csv(std::ostream& os) const {
  os << "index,value\n";
  os.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) os << i << "," << values[i] << "\n";
}

namespace {

bool report(std::ostream& os, const std::string& label, bool ok, const std::string& detail) {
  os << "selftest: " << label << " ... " << (ok ? "ok" : "FAIL");
  if (!detail.empty()) os << " (" << detail << ")";
  os << "\n";
  return ok;
}

}  // namespace

int run_selftest(std::ostream& os) {
  int failures = 0;
  auto check = [&](const std::string& label, bool ok, const std::string& detail = "") {
    if (!report(os, label, ok, detail)) ++failures;
  };

  {
    Rng rng(20240901);
    double worst = 0.0;
    bool shapes_ok = true;
    for (int trial = 0; trial < 50; ++trial) {
      long n = 2 + static_cast<long>(rng.below(79));
      Sample sample(simulate_uniform_sample(n, rng));
      StepDensity fast = grenander(sample);
      StepDensity slow = grenander_oracle(sample);
      if (fast.levels.size() != slow.levels.size()) {
        shapes_ok = false;
        break;
      }
      for (std::size_t k = 0; k < fast.levels.size(); ++k) {
        worst = std::max(worst, std::abs(fast.levels[k] - slow.levels[k]));
        worst = std::max(worst, std::abs(fast.breakpoints[k + 1] - slow.breakpoints[k + 1]));
      }
    }
    check("estimator matches slope oracle", shapes_ok && worst < 1e-10,
          "max deviation " + std::to_string(worst));
  }

  {
    auto [series, product] = cauchy_coefficient_identity({2.0, 0.0}, 100);
    double rel = std::abs(series - product) / std::abs(product);
    check("coefficient identity", rel < 1e-12, "relative error " + std::to_string(rel));
  }

  {
    double e1 = std::abs(charfun_VW_limit_quadrature(1.0, 0.0) - charfun_VW_closed_form(1.0, 0.0));
    double e2 = std::abs(charfun_VW_limit_quadrature(2.0, -1.0) - charfun_VW_closed_form(2.0, -1.0));
    check("limit characteristic function, two routes", e1 < 1e-8 && e2 < 1e-8,
          "errors " + std::to_string(e1) + ", " + std::to_string(e2));
  }

  {
    double ref = 0.21938393439552026;  // exponential integral at 1
    double err = std::abs(incomplete_gamma_zero({1.0, 0.0}) - std::complex<double>(ref, 0.0));
    check("incomplete gamma spot value", err < 1e-12, "error " + std::to_string(err));
  }

  {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::repr_profile;
    cfg.n = 4;
    cfg.reps = 20000;
    cfg.seed = 7;
    ExperimentResult res = run_experiment(cfg);
    check("block-profile sampler vs exact pmf", res.tv_distance < 0.02,
          "tv " + std::to_string(res.tv_distance));
  }

  {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::l2;
    cfg.n = 50;
    cfg.reps = 50;
    cfg.seed = 11;
    ExperimentResult res = run_experiment(cfg);
    check("direct vs block-sum statistic", res.max_cross_check_error < 1e-9,
          "max discrepancy " + std::to_string(res.max_cross_check_error));
  }

  {
    Rng rng(3);
    std::vector<double> normals(2000);
    for (auto& v : normals) v = rng.normal();
    KsResult ks = ks_one_sample(normals, normal_cdf);
    check("normal sampler passes KS", ks.pvalue > 1e-4, "p " + std::to_string(ks.pvalue));
  }

  {
    FunctionalSpec spec = l2_spec();
    PhaseContext ctx;
    ctx.n = 10000;
    ctx.s = 1.0;
    ctx.t = 1.0;
    ctx.functional = &spec;
    std::complex<double> approx = phi_saddle(ctx, 100);
    std::complex<double> exact = phi_quadrature(ctx, 100);
    double rel = std::abs(approx / exact - 1.0);
    check("saddle point vs quadrature", rel < 0.1, "relative error " + std::to_string(rel));
  }

  {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::charfun;
    cfg.n = 100;
    cfg.reps = 20000;
    cfg.seed = 5;
    ExperimentResult res = run_experiment(cfg);
    double band = 4.0 * std::sqrt(2.0 / static_cast<double>(cfg.reps));
    check("compound sampler matches characteristic function",
          res.max_cross_check_error < band,
          "max error " + std::to_string(res.max_cross_check_error));
  }

  os << "selftest: " << (failures == 0 ? "all checks passed" : std::to_string(failures) + " failure(s)")
     << "\n";
  return failures;
}

}  // namespace grenfun

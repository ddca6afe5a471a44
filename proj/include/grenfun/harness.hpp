#pragma once

// Monte Carlo experiment harness: seeded, replicable simulation runs over
// the estimator statistics, the block-structure sampler, and the analytic
// cross-checks, with normal/KS goodness-of-fit summaries and JSON/CSV
// output.  Replication r always uses Rng::substream(seed, r), so results
// are bit-identical for any worker count.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "grenfun/estimator.hpp"

namespace grenfun {

// Standard normal CDF.
double normal_cdf(double x);

// Survival function of the Kolmogorov distribution, accurate on both tails.
double kolmogorov_pvalue(double x);

struct KsResult {
  double statistic = 0.0;  // sup-distance D
  double pvalue = 1.0;     // asymptotic, with small-sample size correction
};

KsResult ks_one_sample(std::vector<double> values, const std::function<double(double)>& cdf);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct HistogramBin {
  double left = 0.0;
  double right = 0.0;
  long count = 0;
};

std::vector<HistogramBin> make_histogram(const std::vector<double>& values, int bins);

enum class ExperimentKind {
  jumps,                   // standardized jump counts via the block-structure sampler
  l2,                      // squared-distance statistic on simulated uniform samples
  entropy,                 // entropy statistic on simulated uniform samples
  representation_l2,       // same statistic from the gamma block representation
  representation_entropy,
  charfun,                 // empirical vs exact characteristic function of (V_n, W_n)
  saddle,                  // saddle-point vs quadrature characteristic functions
  cauchy,                  // coefficient identity residuals
  repr_profile,            // block-profile sampler vs exact conditional pmf
};

ExperimentKind parse_kind(const std::string& name);
std::string kind_name(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::l2;
  long n = 100;          // sample size / representation size
  long reps = 1000;      // replications (ignored by grid kinds: saddle, cauchy)
  std::uint64_t seed = 1;
  int workers = 1;
  void validate() const;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<double> values;  // per-replication statistic (or per-point error)
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double ks_statistic = 0.0;   // vs N(0,1) where a CLT applies, else NaN
  double ks_pvalue = 0.0;
  double max_cross_check_error = 0.0;
  double tv_distance = 0.0;    // repr_profile only, else NaN
  double wall_time_s = 0.0;
  nlohmann::json details;      // kind-specific extras

  nlohmann::json to_json(int histogram_bins = 0) const;
  void write_csv(std::ostream& os) const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

// Quick end-to-end exercise of every module; prints one line per check and
// returns the number of failures.
int run_selftest(std::ostream& os);

}  // namespace grenfun

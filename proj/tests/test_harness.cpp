#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "grenfun/harness.hpp"
#include "grenfun/quadrature.hpp"
#include "grenfun/rng.hpp"

using namespace grenfun;

TEST_CASE("normal cdf") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.959964) == doctest::Approx(0.9750000009035575).epsilon(1e-12));
  ComplexIntegrand density = [](double v) {
    return std::complex<double>(std::exp(-0.5 * v * v) / std::sqrt(2.0 * M_PI), 0.0);
  };
  for (double x : {0.4, 0.9, 3.1}) {
    CHECK(normal_cdf(-x) == doctest::Approx(1.0 - normal_cdf(x)).epsilon(1e-13));
    // against direct quadrature of the density
    double direct = 0.5 + integrate(density, 0.0, x, 1e-13, 16).value.real();
    CHECK(normal_cdf(x) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("kolmogorov survival function") {
  CHECK(kolmogorov_pvalue(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-13));
  CHECK(kolmogorov_pvalue(2.0) == doctest::Approx(0.0006709252557796953).epsilon(1e-12));
  // the two internal expansions must hand over smoothly at the split point
  double below = kolmogorov_pvalue(1.18 - 1e-10);
  double above = kolmogorov_pvalue(1.18 + 1e-10);
  CHECK(std::fabs(below - above) < 1e-9);
  CHECK(above == doctest::Approx(0.1234538094297657).epsilon(1e-10));
  // bounds and monotonicity
  CHECK(kolmogorov_pvalue(0.0) == 1.0);
  CHECK(kolmogorov_pvalue(-3.0) == 1.0);
  double prev = 1.0;
  for (double x = 0.05; x < 3.0; x += 0.05) {
    double p = kolmogorov_pvalue(x);
    CHECK(p <= prev + 1e-15);
    CHECK(p >= 0.0);
    prev = p;
  }
}

TEST_CASE("one-sample KS") {
  auto uniform_cdf = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };
  KsResult one = ks_one_sample({0.5}, uniform_cdf);
  CHECK(one.statistic == doctest::Approx(0.5).epsilon(1e-15));

  // Glivenko-Cantelli: D shrinks as the sample grows
  Rng rng(121);
  double d_small = 0.0, d_large = 0.0;
  {
    std::vector<double> xs(100);
    for (auto& x : xs) x = rng.uniform_pos();
    d_small = ks_one_sample(xs, uniform_cdf).statistic;
  }
  {
    std::vector<double> xs(100000);
    for (auto& x : xs) x = rng.uniform_pos();
    d_large = ks_one_sample(xs, uniform_cdf).statistic;
  }
  CHECK(d_large < d_small);
  CHECK(d_large < 0.01);

  KsResult big = ks_one_sample({0.9999}, uniform_cdf);
  CHECK(big.statistic == doctest::Approx(0.9999).epsilon(1e-12));
  CHECK(big.pvalue > 0.0);
  CHECK_THROWS_AS(ks_one_sample({}, uniform_cdf), std::invalid_argument);
}

TEST_CASE("two-sample KS") {
  std::vector<double> a = {0.1, 0.4, 0.7};
  CHECK(ks_two_sample(a, a).statistic == doctest::Approx(0.0));
  CHECK(ks_two_sample({0.0, 0.1}, {0.9, 1.0}).statistic == doctest::Approx(1.0));

  // identical-distribution null: rejection rate at the 1% level stays near 1%
  Rng rng(232);
  int rejections = 0;
  const int pairs = 300;
  for (int p = 0; p < pairs; ++p) {
    std::vector<double> xs(10000), ys(10000);
    for (auto& x : xs) x = rng.normal();
    for (auto& y : ys) y = rng.normal();
    if (ks_two_sample(xs, ys).pvalue < 0.01) ++rejections;
  }
  CHECK(rejections <= 12);  // binomial(300, 0.01): P{ > 12 } < 1e-6
}

TEST_CASE("histogram construction") {
  auto h = make_histogram({0.0, 0.25, 0.5, 0.75, 1.0}, 2);
  REQUIRE(h.size() == 2);
  CHECK(h[0].left == 0.0);
  CHECK(h[1].right == 1.0);
  CHECK(h[0].count + h[1].count == 5);

  auto flat = make_histogram({3.0, 3.0, 3.0}, 4);
  REQUIRE(flat.size() == 1);  // degenerate range collapses to one bin
  CHECK(flat[0].count == 3);

  CHECK(make_histogram({}, 2).empty());
  CHECK_THROWS_AS(make_histogram({1.0}, 0), std::invalid_argument);
}

TEST_CASE("experiment kind names round-trip") {
  for (ExperimentKind k :
       {ExperimentKind::jumps, ExperimentKind::l2, ExperimentKind::entropy,
        ExperimentKind::representation_l2, ExperimentKind::representation_entropy,
        ExperimentKind::charfun, ExperimentKind::saddle, ExperimentKind::cauchy,
        ExperimentKind::repr_profile}) {
    CHECK(parse_kind(kind_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_kind("no_such_kind"), std::invalid_argument);
}

TEST_CASE("config validation") {
  ExperimentConfig config;
  CHECK_NOTHROW(config.validate());
  ExperimentConfig bad = config;
  bad.n = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.reps = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = config;
  bad.workers = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.workers = 257;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("results are independent of the worker count") {
  ExperimentConfig config;
  config.kind = ExperimentKind::l2;
  config.n = 30;
  config.reps = 200;
  config.seed = 424242;
  config.workers = 1;
  ExperimentResult serial = run_experiment(config);
  config.workers = 4;
  ExperimentResult parallel = run_experiment(config);
  REQUIRE(serial.values.size() == parallel.values.size());
  for (std::size_t i = 0; i < serial.values.size(); ++i)
    CHECK(serial.values[i] == parallel.values[i]);  // bitwise
  CHECK(serial.mean == parallel.mean);
}

TEST_CASE("summary statistics recompute from the stored values") {
  ExperimentConfig config;
  config.kind = ExperimentKind::jumps;
  config.n = 500;
  config.reps = 400;
  config.seed = 7;
  ExperimentResult r = run_experiment(config);
  REQUIRE(r.values.size() == 400);
  double mean = 0.0;
  for (double v : r.values) mean += v;
  mean /= 400.0;
  double var = 0.0;
  for (double v : r.values) var += (v - mean) * (v - mean);
  var /= 399.0;
  CHECK(r.mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(r.variance == doctest::Approx(var).epsilon(1e-12));
  CHECK(std::isfinite(r.skewness));
  CHECK(r.ks_pvalue >= 0.0);
  CHECK(r.ks_pvalue <= 1.0);
  CHECK(r.details.contains("raw_mean"));
}

TEST_CASE("representation and direct kinds expose the cross-check error") {
  ExperimentConfig config;
  config.kind = ExperimentKind::l2;
  config.n = 50;
  config.reps = 50;
  config.seed = 11;
  ExperimentResult direct = run_experiment(config);
  // the block-sum route must reproduce the integral route on every fit
  CHECK(direct.max_cross_check_error < 1e-9);

  config.kind = ExperimentKind::repr_profile;
  config.n = 5;
  config.reps = 20000;
  ExperimentResult profile = run_experiment(config);
  CHECK(profile.tv_distance < 0.05);
  CHECK(std::isnan(profile.ks_statistic));
}

TEST_CASE("charfun kind reports the sampling error envelope") {
  ExperimentConfig config;
  config.kind = ExperimentKind::charfun;
  config.n = 100;
  config.reps = 20000;
  config.seed = 5;
  ExperimentResult r = run_experiment(config);
  double se = std::sqrt(2.0 / static_cast<double>(config.reps));
  CHECK(r.max_cross_check_error < 4.0 * se);
  CHECK(r.details.contains("points"));
}

TEST_CASE("json and csv output shapes") {
  ExperimentConfig config;
  config.kind = ExperimentKind::l2;
  config.n = 20;
  config.reps = 25;
  config.seed = 3;
  ExperimentResult r = run_experiment(config);

  nlohmann::json j = r.to_json(10);
  CHECK(j["config"]["kind"] == "l2");
  CHECK(j["config"]["n"] == 20);
  CHECK(j["summary"]["count"] == 25);
  CHECK(j["summary"].contains("ks_pvalue"));
  REQUIRE(j.contains("histogram"));
  CHECK(j["histogram"].size() == 10);
  CHECK_FALSE(r.to_json(0).contains("histogram"));

  std::ostringstream os;
  r.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "index,value");
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 25);
}

TEST_CASE("selftest passes end to end") {
  std::ostringstream os;
  CHECK(run_selftest(os) == 0);
  CHECK(os.str().find("fail") == std::string::npos);
}

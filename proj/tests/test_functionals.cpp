#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "grenfun/estimator.hpp"
#include "grenfun/functionals.hpp"
#include "grenfun/rng.hpp"

using namespace grenfun;

namespace {

std::vector<double> uniform_sample(long n, Rng& rng) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) x = rng.uniform_pos();
  return xs;
}

}  // namespace

TEST_CASE("built-in functional specs satisfy the derivative consistency check") {
  CHECK_NOTHROW(l2_spec().validate());
  CHECK_NOTHROW(entropy_spec().validate());

  FunctionalSpec broken = l2_spec();
  broken.dh = [](std::complex<double> z) { return z; };  // wrong first derivative
  CHECK_THROWS_AS(broken.validate(), std::logic_error);

  FunctionalSpec flat = l2_spec();
  flat.d2h_at_1 = 0.0;
  CHECK_THROWS_AS(flat.validate(), std::logic_error);
}

TEST_CASE("scale factors at n = 100") {
  // sqrt(3 log 100) and sqrt(3/4 log 100)
  CHECK(bn_scale(l2_spec(), 100) == doctest::Approx(3.7169221888498387).epsilon(1e-14));
  CHECK(bn_scale(entropy_spec(), 100) == doctest::Approx(1.8584610944249194).epsilon(1e-14));
  CHECK_THROWS_AS(bn_scale(l2_spec(), 1), std::invalid_argument);
}

TEST_CASE("standardization is the pinned affine map") {
  // (100 * 0.1 - log(100)) / sqrt(3 log 100)
  CHECK(standardize(l2_spec(), 0.1, 100) ==
        doctest::Approx(1.4514239308521226).epsilon(1e-14));
  // affine in raw
  double a = standardize(l2_spec(), 0.0, 50);
  double b = standardize(l2_spec(), 1.0, 50);
  double mid = standardize(l2_spec(), 0.25, 50);
  CHECK(mid == doctest::Approx(a + 0.25 * (b - a)).epsilon(1e-13));
}

TEST_CASE("l2 integral on the worked two-level density") {
  StepDensity d = grenander(Sample({0.25, 0.5, 1.0}));
  double raw = integral_functional(l2_spec(), d);
  CHECK(raw == doctest::Approx(1.0 / 9.0).epsilon(1e-14));

  StatisticValue stat = l2_statistic(Sample({0.25, 0.5, 1.0}));
  CHECK(stat.raw == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(stat.n == 3);
  CHECK(stat.standardized ==
        doctest::Approx(standardize(l2_spec(), 1.0 / 9.0, 3)).epsilon(1e-14));
}

TEST_CASE("entropy integral on the worked two-level density") {
  StepDensity d{{0.0, 0.5, 1.0}, {4.0 / 3.0, 2.0 / 3.0}};
  double raw = integral_functional(entropy_spec(), d);
  CHECK(raw == doctest::Approx(0.056633012265132426).epsilon(1e-13));
  double z = standardize(entropy_spec(), raw, 3);
  CHECK(z == doctest::Approx(-0.4179772116151441).epsilon(1e-13));

  StatisticValue via = functional_statistic(entropy_spec(), d, 3);
  CHECK(via.raw == doctest::Approx(raw).epsilon(1e-15));
  CHECK(via.standardized == doctest::Approx(z).epsilon(1e-15));
}

TEST_CASE("uniform fit has zero raw value for both functionals") {
  StepDensity flat{{0.0, 1.0}, {1.0}};
  CHECK(integral_functional(l2_spec(), flat) == doctest::Approx(0.0));
  CHECK(integral_functional(entropy_spec(), flat) == doctest::Approx(0.0));
  // standardized value is then the deterministic drift term
  double z = functional_statistic(l2_spec(), flat, 100).standardized;
  CHECK(z == doctest::Approx(-std::sqrt(std::log(100.0) / 3.0)).epsilon(1e-13));
}

TEST_CASE("zero-level conventions") {
  // h(z) = (z-1)^2 has h(0) = 1, so an empty tail adds its length;
  // z log z vanishes at 0 and adds nothing.
  StepDensity d = grenander(Sample({0.8}));  // levels 1.25, 0
  double l2 = integral_functional(l2_spec(), d);
  CHECK(l2 == doctest::Approx(0.8 * 0.0625 + 0.2 * 1.0).epsilon(1e-14));
  double ent = integral_functional(entropy_spec(), d);
  CHECK(ent == doctest::Approx(0.8 * 1.25 * std::log(1.25)).epsilon(1e-14));
}

TEST_CASE("l2 integral equals the block identity on random samples") {
  // n * integral of (f-1)^2 == sum J^2/(n D) - n over positive blocks
  Rng rng(505);
  for (int trial = 0; trial < 60; ++trial) {
    long n = 2 + static_cast<long>(rng.below(100));
    Sample sample(uniform_sample(n, rng));
    StepDensity d = grenander(sample);
    double raw = integral_functional(l2_spec(), d);
    double block_sum = 0.0;
    for (const Block& b : decompose_blocks(d, sample))
      if (b.observations > 0)
        block_sum += static_cast<double>(b.observations) * b.observations / b.scaled_length;
    CHECK(static_cast<double>(n) * raw ==
          doctest::Approx(block_sum - static_cast<double>(n)).epsilon(1e-9));
  }
}

TEST_CASE("entropy of a fitted density is nonnegative") {
  // Jensen: integral of f log f >= 0 for a density on [0,1]
  Rng rng(606);
  for (int trial = 0; trial < 60; ++trial) {
    long n = 1 + static_cast<long>(rng.below(100));
    StepDensity d = grenander(Sample(uniform_sample(n, rng)));
    CHECK(integral_functional(entropy_spec(), d) >= -1e-13);
  }
}

TEST_CASE("jump count statistic") {
  StatisticValue v = jump_count_value(14, 1000000);
  CHECK(v.raw == 14.0);
  CHECK(v.standardized == doctest::Approx(0.04963500247305813).epsilon(1e-13));

  // fit-and-count agrees with counting on the fitted density
  Rng rng(707);
  for (int trial = 0; trial < 30; ++trial) {
    long n = 2 + static_cast<long>(rng.below(80));
    Sample sample(uniform_sample(n, rng));
    StatisticValue via = jump_count_statistic(sample);
    StepDensity d = grenander(sample);
    CHECK(via.raw == doctest::Approx(static_cast<double>(d.jump_count())));
  }

  CHECK_THROWS_AS(jump_count_value(1, 1), std::invalid_argument);
}

TEST_CASE("statistic helpers reject samples of size one") {
  CHECK_THROWS_AS(l2_statistic(Sample({0.5})), std::invalid_argument);
  CHECK_THROWS_AS(entropy_statistic(Sample({0.5})), std::invalid_argument);
}

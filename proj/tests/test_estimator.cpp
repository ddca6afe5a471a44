#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "grenfun/estimator.hpp"
#include "grenfun/rng.hpp"

using namespace grenfun;

namespace {

std::vector<double> uniform_sample(long n, Rng& rng) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) x = rng.uniform_pos();
  return xs;
}

// piecewise-linear evaluation of the hull at x
double hull_at(const std::vector<Point>& hull, double x) {
  for (std::size_t i = 1; i < hull.size(); ++i) {
    if (x <= hull[i].x) {
      double w = (x - hull[i - 1].x) / (hull[i].x - hull[i - 1].x);
      return hull[i - 1].y + w * (hull[i].y - hull[i - 1].y);
    }
  }
  return hull.back().y;
}

}  // namespace

TEST_CASE("ecdf vertices on worked examples") {
  auto single = ecdf_vertices(Sample({0.5}));
  REQUIRE(single.size() == 2);
  CHECK(single[0].x == 0.0);
  CHECK(single[0].y == 0.0);
  CHECK(single[1].x == 0.5);
  CHECK(single[1].y == 1.0);

  auto three = ecdf_vertices(Sample({0.25, 0.5, 1.0}));
  REQUIRE(three.size() == 4);
  CHECK(three[1].x == doctest::Approx(0.25));
  CHECK(three[1].y == doctest::Approx(1.0 / 3.0));
  CHECK(three[2].y == doctest::Approx(2.0 / 3.0));
  CHECK(three[3].x == 1.0);
  CHECK(three[3].y == 1.0);

  auto tied = ecdf_vertices(Sample({0.3, 0.3}));
  REQUIRE(tied.size() == 2);
  CHECK(tied[1].x == doctest::Approx(0.3));
  CHECK(tied[1].y == 1.0);
}

TEST_CASE("sample and ecdf input validation") {
  CHECK_THROWS_AS(Sample(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(Sample({0.5, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(Sample({-0.1}), std::invalid_argument);
  // an observation at exactly 0 would force an infinite first slope
  CHECK_THROWS_AS(ecdf_vertices(Sample({0.0, 0.5})), std::invalid_argument);
}

TEST_CASE("least concave majorant on worked examples") {
  std::vector<Point> two = {{0.0, 0.0}, {1.0, 1.0}};
  auto hull2 = least_concave_majorant(two);
  REQUIRE(hull2.size() == 2);

  auto hull3 = least_concave_majorant(ecdf_vertices(Sample({0.25, 0.5, 1.0})));
  REQUIRE(hull3.size() == 3);  // equal slopes 4/3, 4/3 merge
  CHECK(hull3[1].x == doctest::Approx(0.5));
  CHECK(hull3[1].y == doctest::Approx(2.0 / 3.0));

  std::vector<Point> concave = {{0.0, 0.0}, {0.5, 1.0}, {1.0, 1.0}};
  auto hull_c = least_concave_majorant(concave);
  REQUIRE(hull_c.size() == 3);
  CHECK(hull_c[1].x == doctest::Approx(0.5));
}

TEST_CASE("hull is idempotent, dominant, and slope-monotone on random inputs") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    long n = 1 + static_cast<long>(rng.below(60));
    auto vertices = ecdf_vertices(Sample(uniform_sample(n, rng)));
    auto hull = least_concave_majorant(vertices);

    auto again = least_concave_majorant(hull);
    REQUIRE(again.size() == hull.size());
    for (std::size_t i = 0; i < hull.size(); ++i) {
      CHECK(again[i].x == hull[i].x);
      CHECK(again[i].y == hull[i].y);
    }

    for (const Point& v : vertices) CHECK(hull_at(hull, v.x) >= v.y - 1e-12);

    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < hull.size(); ++i) {
      double slope = (hull[i].y - hull[i - 1].y) / (hull[i].x - hull[i - 1].x);
      CHECK(slope < prev + 1e-12);
      prev = slope;
    }
  }
}

TEST_CASE("hull input validation") {
  CHECK_THROWS_AS(least_concave_majorant({{0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(least_concave_majorant({{0.1, 0.0}, {1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(least_concave_majorant({{0.0, 0.0}, {0.0, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(least_concave_majorant({{0.0, 0.0}, {0.5, 0.6}, {1.0, 0.5}}),
                  std::invalid_argument);
}

TEST_CASE("estimator on worked examples") {
  StepDensity d = grenander(Sample({0.25, 0.5, 1.0}));
  REQUIRE(d.levels.size() == 2);
  CHECK(d.breakpoints[1] == doctest::Approx(0.5));
  CHECK(d.levels[0] == doctest::Approx(4.0 / 3.0));
  CHECK(d.levels[1] == doctest::Approx(2.0 / 3.0));
  CHECK(d.jump_count() == 1);
  // left-continuous evaluation
  CHECK(d.value_at(0.5) == doctest::Approx(4.0 / 3.0));
  CHECK(d.value_at(0.5000001) == doctest::Approx(2.0 / 3.0));
  CHECK(d.value_at(1.0) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(d.value_at(1.5), std::invalid_argument);

  // single observation below 1 forces a two-piece fit with a zero tail
  StepDensity s = grenander(Sample({0.8}));
  REQUIRE(s.levels.size() == 2);
  CHECK(s.levels[0] == doctest::Approx(1.25));
  CHECK(s.levels[1] == 0.0);
  CHECK(s.breakpoints[1] == doctest::Approx(0.8));
  CHECK(s.breakpoints[2] == 1.0);
}

TEST_CASE("no zero level when the largest observation is 1") {
  StepDensity d = grenander(Sample({0.5, 1.0}));
  CHECK(d.levels.back() > 0.0);
  CHECK(d.breakpoints.back() == 1.0);
}

TEST_CASE("mass conservation and validation on random samples") {
  Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    long n = 1 + static_cast<long>(rng.below(150));
    StepDensity d = grenander(Sample(uniform_sample(n, rng)));
    CHECK_NOTHROW(d.validate());
    CHECK(std::fabs(d.integral() - 1.0) <= 1e-12);
  }
}

TEST_CASE("estimator equals the max-min slope oracle") {
  Rng rng(303);
  for (int trial = 0; trial < 300; ++trial) {
    long n = 1 + static_cast<long>(rng.below(120));
    Sample sample(uniform_sample(n, rng));
    StepDensity fast = grenander(sample);
    StepDensity slow = grenander_oracle(sample);
    REQUIRE(fast.levels.size() == slow.levels.size());
    for (std::size_t i = 0; i < fast.levels.size(); ++i) {
      CHECK(std::fabs(fast.levels[i] - slow.levels[i]) <= 1e-10);
      CHECK(std::fabs(fast.breakpoints[i + 1] - slow.breakpoints[i + 1]) <= 1e-10);
    }
  }
}

TEST_CASE("oracle size guard") {
  std::vector<double> big(5001, 0.5);
  for (std::size_t i = 0; i < big.size(); ++i)
    big[i] = (static_cast<double>(i) + 1.0) / 5002.0;
  CHECK_THROWS_AS(grenander_oracle(Sample(big)), std::invalid_argument);
}

TEST_CASE("jump profile and block decomposition on the worked example") {
  Sample sample({0.25, 0.5, 1.0});
  StepDensity d = grenander(sample);
  JumpProfile profile = jump_profile(d, sample);
  CHECK(profile.n == 3);
  CHECK(profile.counts.at(2) == 1);
  CHECK(profile.counts.at(1) == 1);
  CHECK(profile.block_count() == 2);
  CHECK_NOTHROW(profile.validate());
  auto parts = profile.partition();
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == 2);
  CHECK(parts[1] == 1);

  auto blocks = decompose_blocks(d, sample);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].observations == 2);
  CHECK(blocks[0].scaled_length == doctest::Approx(1.5));
  CHECK(blocks[1].observations == 1);
  CHECK(blocks[1].scaled_length == doctest::Approx(1.5));
}

TEST_CASE("single observation yields one singleton block plus an empty tail") {
  Sample sample({0.8});
  StepDensity d = grenander(sample);
  JumpProfile profile = jump_profile(d, sample);
  CHECK(profile.block_count() == 1);
  CHECK(profile.counts.at(1) == 1);

  auto blocks = decompose_blocks(d, sample);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].observations == 1);
  CHECK(blocks[0].scaled_length == doctest::Approx(0.8));
  CHECK(blocks[1].observations == 0);
  CHECK(blocks[1].scaled_length == doctest::Approx(0.2));
}

TEST_CASE("block decomposition conserves observations, length, and levels") {
  Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    long n = 2 + static_cast<long>(rng.below(100));
    Sample sample(uniform_sample(n, rng));
    StepDensity d = grenander(sample);
    auto blocks = decompose_blocks(d, sample);
    long total_obs = 0;
    double total_len = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      total_obs += blocks[i].observations;
      total_len += blocks[i].scaled_length;
      if (blocks[i].observations > 0) {
        // fitted level on each constancy interval is (obs count)/(n * length)
        double implied = static_cast<double>(blocks[i].observations) / blocks[i].scaled_length;
        CHECK(implied == doctest::Approx(d.levels[i]).epsilon(1e-9));
      }
    }
    CHECK(total_obs == n);
    CHECK(total_len == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
  }
}

TEST_CASE("sample file reading") {
  std::string path = "test_sample_tmp.txt";
  {
    std::ofstream os(path);
    os << "0.25\n\n0.5\n1.0\n";
  }
  Sample sample = Sample::read_file(path);
  REQUIRE(sample.n() == 3);
  CHECK(sample.values[2] == 1.0);
  std::remove(path.c_str());

  {
    std::ofstream os(path);
    os << "0.25\nnot_a_number\n";
  }
  CHECK_THROWS_WITH_AS(Sample::read_file(path),
                       doctest::Contains(":2"), std::runtime_error);
  std::remove(path.c_str());

  CHECK_THROWS_AS(Sample::read_file("does_not_exist_grenfun.txt"), std::runtime_error);
}

TEST_CASE("step density validation rejects malformed inputs") {
  StepDensity bad_mass{{0.0, 1.0}, {0.5}};
  CHECK_THROWS_AS(bad_mass.validate(), std::logic_error);

  StepDensity nondecreasing{{0.0, 0.5, 1.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(nondecreasing.validate(), std::logic_error);

  StepDensity bad_support{{0.1, 1.0}, {1.0 / 0.9}};
  CHECK_THROWS_AS(bad_support.validate(), std::logic_error);

  StepDensity unsorted{{0.0, 0.6, 0.5, 1.0}, {2.0, 1.0, 0.5}};
  CHECK_THROWS_AS(unsorted.validate(), std::logic_error);

  StepDensity negative{{0.0, 0.5, 1.0}, {3.0, -1.0}};
  CHECK_THROWS_AS(negative.validate(), std::logic_error);
}

TEST_CASE("csv output format") {
  StepDensity d = grenander(Sample({0.25, 0.5, 1.0}));
  std::ostringstream os;
  d.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "xi_left,xi_right,level");
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == static_cast<int>(d.piece_count()));
}

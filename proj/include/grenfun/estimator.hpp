#pragma once

// Decreasing-density estimation on [0,1]: the left-continuous slope of the
// least concave majorant of the empirical distribution function, plus the
// induced jump structure (block sizes and block lengths) that the
// conditioned Poisson-gamma machinery in representation.hpp reproduces.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace grenfun {

// Observations in [0,1]; kept unsorted as given.
struct Sample {
  std::vector<double> values;

  explicit Sample(std::vector<double> v);
  long n() const { return static_cast<long>(values.size()); }

  // One decimal number per line; blank lines ignored.
  static Sample read_file(const std::string& path);
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Piecewise-constant density: level levels[i] on (breakpoints[i], breakpoints[i+1]].
// breakpoints start at 0 and end at 1; levels are strictly decreasing and the
// last one may be 0 (samples whose maximum falls short of 1).
struct StepDensity {
  std::vector<double> breakpoints;
  std::vector<double> levels;

  std::size_t piece_count() const { return levels.size(); }
  // Number of strict downward jumps in (0,1).
  int jump_count() const { return static_cast<int>(levels.size()) - 1; }
  // Left-continuous evaluation; value_at(0) returns the first level.
  double value_at(double x) const;
  double integral() const;
  void validate() const;

  // CSV with header xi_left,xi_right,level.
  void write_csv(std::ostream& os) const;
};

// Multiplicities of block sizes: counts[j] intervals of constancy carrying
// exactly j observations (j >= 1).  The empty stretch past the largest
// observation, when present, is not a block here.
struct JumpProfile {
  std::map<int, long> counts;
  long n = 0;

  long block_count() const;           // total number of blocks
  void validate() const;              // sum of j * counts[j] == n, entries positive
  std::vector<int> partition() const; // block sizes, descending
};

// One interval of constancy of a fitted density: the number of observations
// it carries and n times its length.  observations == 0 only for the
// trailing empty stretch.
struct Block {
  long observations = 0;
  double scaled_length = 0.0;  // n * interval length
};

// Vertices of the empirical CDF: (0,0) then (x_(i), i/n) with ties collapsed
// to the highest level.  Throws std::invalid_argument on an empty sample.
std::vector<Point> ecdf_vertices(const Sample& sample);

// Upper concave hull of a polyline with strictly increasing x, nondecreasing
// y, starting at (0,0).  Consecutive segments whose slopes differ by less
// than 1e-12 are merged.  Every input vertex ends up on or below the hull.
std::vector<Point> least_concave_majorant(const std::vector<Point>& vertices);

// The decreasing-density estimate for a sample in [0,1]: slopes of the least
// concave majorant, with a zero level appended on (max value, 1] when the
// sample maximum is below 1.  Integrates to 1.
StepDensity grenander(const Sample& sample);

// Independent reference implementation via the max-min slope formula
//   f(t) = min_{a < t} max_{b >= t} (F_n(b) - F_n(a)) / (b - a)
// evaluated at the data points (a, b range over data points and the origin).
// O(n^2); guarded to n <= 5000.
StepDensity grenander_oracle(const Sample& sample);

// Block sizes of a fitted density against the generating sample.  Throws if
// the pair is inconsistent (some positive-level interval carries no
// observation, or counts do not add up to n).
JumpProfile jump_profile(const StepDensity& density, const Sample& sample);

// All intervals of constancy as (observation count, n * length) pairs,
// including the trailing empty stretch when the sample maximum is below 1.
// The scaled lengths always sum to n.
std::vector<Block> decompose_blocks(const StepDensity& density, const Sample& sample);

}  // namespace grenfun

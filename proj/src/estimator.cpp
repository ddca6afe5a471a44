#include "grenfun/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace grenfun {

namespace {
constexpr double kSlopeMergeTol = 1e-12;
}

Sample::Sample(std::vector<double> v) : values(std::move(v)) {
  if (values.empty()) throw std::invalid_argument("Sample: empty");
  for (double x : values) {
    if (!(x >= 0.0 && x <= 1.0))
      throw std::invalid_argument("Sample: values must lie in [0,1]");
  }
}

Sample Sample::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("Sample::read_file: cannot open " + path);
  std::vector<double> v;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    try {
      std::size_t used = 0;
      double x = std::stod(line.substr(first), &used);
      v.push_back(x);
      std::size_t rest = line.find_first_not_of(" \t\r", first + used);
      if (rest != std::string::npos) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      std::ostringstream msg;
      msg << "Sample::read_file: bad value at " << path << ":" << lineno;
      throw std::runtime_error(msg.str());
    }
  }
  return Sample(std::move(v));
}

double StepDensity::value_at(double x) const {
  if (breakpoints.empty()) throw std::logic_error("StepDensity: empty");
  if (x < breakpoints.front() || x > breakpoints.back())
    throw std::invalid_argument("StepDensity::value_at: outside [0,1]");
  if (x == breakpoints.front()) return levels.front();
  // Left-continuous: value on (xi_{i}, xi_{i+1}] is levels[i].
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - breakpoints.begin());
  return levels[idx - 1];
}

double StepDensity::integral() const {
  double total = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i)
    total += levels[i] * (breakpoints[i + 1] - breakpoints[i]);
  return total;
}

void StepDensity::validate() const {
  if (levels.empty() || breakpoints.size() != levels.size() + 1)
    throw std::logic_error("StepDensity: size mismatch");
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
    throw std::logic_error("StepDensity: support must be [0,1]");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw std::logic_error("StepDensity: breakpoints not increasing");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] >= 0.0)) throw std::logic_error("StepDensity: negative level");
    if (i > 0 && !(levels[i] < levels[i - 1]))
      throw std::logic_error("StepDensity: levels not strictly decreasing");
  }
  if (std::fabs(integral() - 1.0) > 1e-12)
    throw std::logic_error("StepDensity: does not integrate to 1");
}

void StepDensity::write_csv(std::ostream& os) const {
  os << "xi_left,xi_right,level\n";
  os.precision(17);
  for (std::size_t i = 0; i < levels.size(); ++i)
    os << breakpoints[i] << ',' << breakpoints[i + 1] << ',' << levels[i] << '\n';
}

long JumpProfile::block_count() const {
  long total = 0;
  for (const auto& [j, q] : counts) {
    (void)j;
    total += q;
  }
  return total;
}

void JumpProfile::validate() const {
  long mass = 0;
  for (const auto& [j, q] : counts) {
    if (j < 1 || q < 1) throw std::logic_error("JumpProfile: nonpositive entry");
    mass += static_cast<long>(j) * q;
  }
  if (mass != n) throw std::logic_error("JumpProfile: block sizes do not sum to n");
}

std::vector<int> JumpProfile::partition() const {
  std::vector<int> sizes;
  for (auto it = counts.rbegin(); it != counts.rend(); ++it)
    for (long k = 0; k < it->second; ++k) sizes.push_back(it->first);
  return sizes;
}

std::vector<Point> ecdf_vertices(const Sample& sample) {
  std::vector<double> sorted = sample.values;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == 0.0) {
    // An atom at 0 would put a vertex directly above the origin and force an
    // infinite first slope; a decreasing density on (0,1] has no mass there.
    throw std::invalid_argument("ecdf_vertices: observations at exactly 0 unsupported");
  }
  const double n = static_cast<double>(sorted.size());
  std::vector<Point> vertices;
  vertices.reserve(sorted.size() + 1);
  vertices.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    // Collapse ties: keep only the highest level at each distinct x.
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    vertices.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return vertices;
}

std::vector<Point> least_concave_majorant(const std::vector<Point>& vertices) {
  if (vertices.size() < 2)
    throw std::invalid_argument("least_concave_majorant: need at least 2 vertices");
  if (vertices[0].x != 0.0 || vertices[0].y != 0.0)
    throw std::invalid_argument("least_concave_majorant: must start at (0,0)");
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (!(vertices[i].x > vertices[i - 1].x))
      throw std::invalid_argument("least_concave_majorant: x not strictly increasing");
    if (vertices[i].y < vertices[i - 1].y)
      throw std::invalid_argument("least_concave_majorant: y decreasing");
  }

  auto slope = [](const Point& p, const Point& q) {
    return (q.y - p.y) / (q.x - p.x);
  };

  // Monotone stack: pop while appending the next vertex would bend upward.
  std::vector<Point> hull;
  hull.reserve(vertices.size());
  for (const Point& p : vertices) {
    while (hull.size() >= 2 &&
           slope(hull[hull.size() - 2], p) >= slope(hull[hull.size() - 2], hull.back()))
      hull.pop_back();
    hull.push_back(p);
  }

  // Merge numerically equal consecutive slopes.
  std::vector<Point> merged;
  merged.reserve(hull.size());
  merged.push_back(hull[0]);
  merged.push_back(hull[1]);
  for (std::size_t i = 2; i < hull.size(); ++i) {
    while (merged.size() >= 2) {
      double s_prev = slope(merged[merged.size() - 2], merged.back());
      double s_next = slope(merged.back(), hull[i]);
      if (std::fabs(s_prev - s_next) < kSlopeMergeTol)
        merged.pop_back();
      else
        break;
    }
    merged.push_back(hull[i]);
  }
  return merged;
}

namespace {

StepDensity density_from_breaks(std::vector<double> xs, std::vector<double> lvls) {
  // Append the zero level past the last observation when needed.
  if (xs.back() < 1.0) {
    xs.push_back(1.0);
    lvls.push_back(0.0);
  }
  StepDensity d;
  d.breakpoints = std::move(xs);
  d.levels = std::move(lvls);
  return d;
}

}  // namespace

StepDensity grenander(const Sample& sample) {
  std::vector<Point> hull = least_concave_majorant(ecdf_vertices(sample));
  std::vector<double> xs, lvls;
  xs.reserve(hull.size() + 1);
  lvls.reserve(hull.size());
  xs.push_back(0.0);
  for (std::size_t i = 1; i < hull.size(); ++i) {
    xs.push_back(hull[i].x);
    lvls.push_back((hull[i].y - hull[i - 1].y) / (hull[i].x - hull[i - 1].x));
  }
  return density_from_breaks(std::move(xs), std::move(lvls));
}

StepDensity grenander_oracle(const Sample& sample) {
  if (sample.n() > 5000)
    throw std::invalid_argument("grenander_oracle: n > 5000 (quadratic cost guard)");
  std::vector<Point> pts = ecdf_vertices(sample);  // pts[0] is the origin
  const std::size_t m = pts.size();

  // level[k] = min over a < k of ( max over b >= k of slope(a, b) ),
  // computed with one suffix-max sweep per anchor a.
  std::vector<double> level(m, std::numeric_limits<double>::infinity());
  std::vector<double> sufmax(m);
  for (std::size_t a = 0; a + 1 < m; ++a) {
    double running = -std::numeric_limits<double>::infinity();
    for (std::size_t b = m - 1; b > a; --b) {
      double s = (pts[b].y - pts[a].y) / (pts[b].x - pts[a].x);
      if (s > running) running = s;
      sufmax[b] = running;
    }
    for (std::size_t k = a + 1; k < m; ++k)
      if (sufmax[k] < level[k]) level[k] = sufmax[k];
  }

  // Merge equal levels into intervals of constancy.
  std::vector<double> xs, lvls;
  xs.push_back(0.0);
  for (std::size_t k = 1; k < m; ++k) {
    if (!lvls.empty() && std::fabs(level[k] - lvls.back()) < kSlopeMergeTol) {
      xs.back() = pts[k].x;
    } else {
      xs.push_back(pts[k].x);
      lvls.push_back(level[k]);
    }
  }
  return density_from_breaks(std::move(xs), std::move(lvls));
}

std::vector<Block> decompose_blocks(const StepDensity& density, const Sample& sample) {
  std::vector<double> sorted = sample.values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<Block> blocks;
  blocks.reserve(density.levels.size());
  std::size_t lo = 0;
  for (std::size_t i = 0; i < density.levels.size(); ++i) {
    const double right = density.breakpoints[i + 1];
    std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(sorted.begin() + static_cast<std::ptrdiff_t>(lo), sorted.end(), right) -
        sorted.begin());
    blocks.push_back(Block{static_cast<long>(hi - lo),
                           n * (right - density.breakpoints[i])});
    lo = hi;
  }
  if (lo != sorted.size())
    throw std::invalid_argument("decompose_blocks: density does not cover the sample");
  return blocks;
}

JumpProfile jump_profile(const StepDensity& density, const Sample& sample) {
  std::vector<Block> blocks = decompose_blocks(density, sample);
  JumpProfile profile;
  profile.n = sample.n();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (b.observations == 0) {
      // Only the trailing zero-level stretch may be empty.
      if (i + 1 != blocks.size() || density.levels[i] != 0.0)
        throw std::invalid_argument("jump_profile: empty interval at positive level");
      continue;
    }
    profile.counts[static_cast<int>(b.observations)] += 1;
  }
  profile.validate();
  return profile;
}

}  // namespace grenfun

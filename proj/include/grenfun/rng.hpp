#pragma once

// Reproducible random number generation with per-replication substreams.
//
// Each Monte Carlo replication draws from its own stream, derived from
// (seed, stream index) by a SplitMix64 mix.  Results are therefore
// independent of how replications are distributed over worker threads.
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard; the distribution transforms below are written out explicitly
// (std::*_distribution sequences are implementation-defined, which would
// make recorded seeds non-portable across standard libraries).

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace grenfun {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Stream `index` of a family identified by `seed`.  Two mixing rounds keep
  // nearby (seed, index) pairs far apart in the engine's seed space.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0x9e3779b97f4a7c15ULL * (index + 1);
    std::uint64_t derived = splitmix64(s);
    return Rng(splitmix64(derived) ^ derived);
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe as a log() argument.
  double uniform_pos() { return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; }

  // Standard normal via Box-Muller.  No cached second value, so the draw
  // sequence depends only on the call order.
  double normal() {
    double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    double a = 6.283185307179586476925286766559 * uniform();
    return r * std::cos(a);
  }

  // Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang squeeze method).
  double gamma(double shape) {
    if (shape < 1.0) throw std::invalid_argument("Rng::gamma: shape must be >= 1");
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      double v = t * t * t;
      double u = uniform_pos();
      double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Poisson by inversion; intended for small means (the uses here have
  // mean <= harmonic(n) ~ 15).
  int poisson(double mean) {
    if (!(mean >= 0.0) || mean > 50.0)
      throw std::invalid_argument("Rng::poisson: mean out of supported range");
    double p = std::exp(-mean);
    double f = p;
    double u = uniform();
    int k = 0;
    while (u > f) {
      ++k;
      p *= mean / k;
      f += p;
      if (k > 2000) break;  // unreachable for supported means; guards fp stalls
    }
    return k;
  }

  // Fisher-Yates index for shuffles: uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    // Rejection from the top to avoid modulo bias.
    std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % bound;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace grenfun

#include "grenfun/representation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grenfun {

double harmonic(long n) {
  if (n < 0) throw std::invalid_argument("harmonic: n >= 0 required");
  // Sum from the small end up for accuracy.
  double h = 0.0;
  for (long j = n; j >= 1; --j) h += 1.0 / static_cast<double>(j);
  return h;
}

PoissonGammaDraw sample_unconditional(long n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_unconditional: n >= 1 required");
  PoissonGammaDraw d;
  d.n = n;
  d.counts.resize(static_cast<std::size_t>(n));
  d.gammas.resize(static_cast<std::size_t>(n));
  for (long j = 1; j <= n; ++j) {
    int c = rng.poisson(1.0 / static_cast<double>(j));
    d.counts[static_cast<std::size_t>(j - 1)] = c;
    auto& row = d.gammas[static_cast<std::size_t>(j - 1)];
    row.reserve(static_cast<std::size_t>(c));
    for (int i = 0; i < c; ++i) {
      double g = rng.gamma(static_cast<double>(j));
      row.push_back(g);
      d.S += g;
    }
    d.T += static_cast<long>(j) * c;
  }
  d.V = (d.S - static_cast<double>(d.T)) / std::sqrt(static_cast<double>(n));
  d.W = static_cast<double>(d.T) / static_cast<double>(n);
  return d;
}

double prob_T_equals_n(long n) {
  if (n < 1) throw std::invalid_argument("prob_T_equals_n: n >= 1 required");
  return std::exp(-harmonic(n));
}

JumpProfile sample_profile_conditional(long n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_profile_conditional: n >= 1 required");
  JumpProfile profile;
  profile.n = n;
  long remaining = n;
  while (remaining > 0) {
    long len = 1 + static_cast<long>(rng.uniform() * static_cast<double>(remaining));
    if (len > remaining) len = remaining;  // guards the u ~ 1 rounding edge
    profile.counts[static_cast<int>(len)] += 1;
    remaining -= len;
  }
  return profile;
}

namespace {

void enumerate_partitions(int remaining, int max_part, std::vector<int>& current,
                          std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    enumerate_partitions(remaining - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace

std::map<std::vector<int>, double> conditional_profile_pmf_oracle(int n) {
  if (n < 1 || n > 12)
    throw std::invalid_argument("conditional_profile_pmf_oracle: 1 <= n <= 12 required");
  std::vector<std::vector<int>> partitions;
  std::vector<int> scratch;
  enumerate_partitions(n, n, scratch, partitions);

  std::map<std::vector<int>, double> pmf;
  double total = 0.0;
  for (const auto& p : partitions) {
    // weight = prod over distinct sizes j: (1/j)^{m_j} / m_j!
    double w = 1.0;
    std::size_t i = 0;
    while (i < p.size()) {
      std::size_t run = i;
      while (run < p.size() && p[run] == p[i]) ++run;
      std::size_t mult = run - i;
      for (std::size_t k = 1; k <= mult; ++k)
        w /= static_cast<double>(p[i]) * static_cast<double>(k);
      i = run;
    }
    pmf[p] = w;
    total += w;
  }
  for (auto& [key, value] : pmf) {
    (void)key;
    value /= total;  // total is 1 in exact arithmetic
  }
  return pmf;
}

ConditionalDraw sample_conditional(long n, Rng& rng, bool zero_step) {
  ConditionalDraw d;
  d.n = n;
  d.profile = sample_profile_conditional(n, rng);

  std::vector<int> sizes = d.profile.partition();
  // Exchangeable order: Fisher-Yates shuffle.
  for (std::size_t i = sizes.size(); i > 1; --i)
    std::swap(sizes[i - 1], sizes[rng.below(i)]);

  std::vector<double> shares;
  shares.reserve(sizes.size() + 1);
  double total = 0.0;
  for (int j : sizes) {
    double g = rng.gamma(static_cast<double>(j));
    shares.push_back(g);
    total += g;
  }
  if (zero_step) {
    // The stretch past the largest observation: zero observations, one unit
    // of exponential mass in the normalization.
    double g = rng.gamma(1.0);
    shares.push_back(g);
    total += g;
  }

  d.blocks.reserve(shares.size());
  for (std::size_t i = 0; i < sizes.size(); ++i)
    d.blocks.push_back(Block{sizes[i], static_cast<double>(n) * shares[i] / total});
  if (zero_step)
    d.blocks.push_back(Block{0, static_cast<double>(n) * shares.back() / total});
  return d;
}

StatisticValue representation_statistic(const std::vector<Block>& blocks, long n,
                                        const FunctionalSpec& spec) {
  if (n < 2) throw std::invalid_argument("representation_statistic: n >= 2 required");
  double h_sum = 0.0;       // sum of h(level) * nD
  double length_sum = 0.0;  // sum of nD
  double linear_sum = 0.0;  // sum of h'(1) (nD - J)
  for (const Block& b : blocks) {
    if (!(b.scaled_length > 0.0))
      throw std::invalid_argument("representation_statistic: nonpositive spacing");
    double hval;
    if (b.observations == 0) {
      hval = spec.h_at_0;
    } else {
      double level = static_cast<double>(b.observations) / b.scaled_length;
      hval = spec.h(std::complex<double>(level)).real();
    }
    h_sum += hval * b.scaled_length;
    length_sum += b.scaled_length;
    linear_sum += spec.dh_at_1 * (b.scaled_length - static_cast<double>(b.observations));
  }
  const double logn = std::log(static_cast<double>(n));
  StatisticValue v;
  v.n = n;
  v.raw = h_sum / static_cast<double>(n);
  v.standardized = (h_sum - spec.h_at_1 * length_sum + linear_sum -
                    0.5 * spec.d2h_at_1 * logn) /
                   bn_scale(spec, n);
  return v;
}

StatisticValue representation_statistic(const ConditionalDraw& draw,
                                        const FunctionalSpec& spec) {
  return representation_statistic(draw.blocks, draw.n, spec);
}

VWSampler::VWSampler(long n) : n_(n) {
  if (n < 1) throw std::invalid_argument("VWSampler: n >= 1 required");
  cumulative_.resize(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (long j = 1; j <= n; ++j) {
    acc += 1.0 / static_cast<double>(j);
    cumulative_[static_cast<std::size_t>(j - 1)] = acc;
  }
  total_rate_ = acc;
}

std::pair<double, double> VWSampler::draw(Rng& rng) const {
  int events = rng.poisson(total_rate_);
  double S = 0.0;
  long T = 0;
  for (int k = 0; k < events; ++k) {
    double target = rng.uniform() * total_rate_;
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
    long j = 1 + static_cast<long>(it - cumulative_.begin());
    if (j > n_) j = n_;
    T += j;
    S += rng.gamma(static_cast<double>(j));
  }
  double V = (S - static_cast<double>(T)) / std::sqrt(static_cast<double>(n_));
  double W = static_cast<double>(T) / static_cast<double>(n_);
  return {V, W};
}

}  // namespace grenfun

#pragma once

// Poisson-gamma representation of the jump structure of the fitted density
// for a uniform sample of size n:
//
//   N_j ~ Poisson(1/j) independent (j = 1..n), block sizes;
//   S_{j,i} ~ Gamma(j, 1) independent, scaled block lengths;
//   T_n = sum j N_j, S_n = sum S_{j,i}.
//
// Conditionally on {T_n = n, S_n = n}, the block sizes and scaled lengths
// have exactly the law of the fitted estimator's jump structure, provided
// the empty stretch past the largest observation is carried along as one
// extra block of zero observations with a unit-exponential length share.
// The conditional block-size law is the cycle-type law of a uniform random
// permutation; P{T_n = n} = exp(-H_n).

#include <cstdint>
#include <map>
#include <vector>

#include "grenfun/estimator.hpp"
#include "grenfun/functionals.hpp"
#include "grenfun/rng.hpp"

namespace grenfun {

double harmonic(long n);

// One unconditioned draw, fully materialized (O(n) memory and time).
struct PoissonGammaDraw {
  long n = 0;
  std::vector<int> counts;                // counts[j-1] = N_j
  std::vector<std::vector<double>> gammas;  // gammas[j-1] holds N_j Gamma(j,1) draws
  double S = 0.0;
  long T = 0;
  double V = 0.0;  // (S - T) / sqrt(n)
  double W = 0.0;  // T / n
};

PoissonGammaDraw sample_unconditional(long n, Rng& rng);

// P{T_n = n} = exp(-H_n).
double prob_T_equals_n(long n);

// Conditional block-size profile (N_1..N_n | T_n = n): realized as the
// cycle counts of a uniform random permutation via sequential uniform
// block splitting (the cycle containing the smallest unplaced element has
// length uniform on what remains).  O(number of blocks) per draw.
JumpProfile sample_profile_conditional(long n, Rng& rng);

// Exact conditional pmf by enumerating partitions of n (guarded to n <= 12):
// weight prod_j (1/j)^{N_j} / N_j!, normalized.  Keys are partitions as
// descending block-size vectors.
std::map<std::vector<int>, double> conditional_profile_pmf_oracle(int n);

// A full conditional draw: profile plus block lengths.  Given block sizes
// J_i (uniformly shuffled), independent G_i ~ Gamma(J_i, 1) are normalized
// so the scaled lengths n D_i = n G_i / sum G sum to n.  With
// zero_step = true (the exact finite-n law) a trailing block of zero
// observations with a Gamma(1,1) share joins the normalization.
struct ConditionalDraw {
  long n = 0;
  JumpProfile profile;
  std::vector<Block> blocks;  // (J_i, n D_i); trailing entry may have 0 observations
};

ConditionalDraw sample_conditional(long n, Rng& rng, bool zero_step = true);

// The standardized functional statistic evaluated on a block decomposition:
//   U = ( sum_i [ (h(J_i / nD_i) - h(1)) nD_i + h'(1) (nD_i - J_i) ]
//         - h''(1)/2 log n ) / b_n,
// with h_at_0 standing in for h(J/nD) on zero-observation blocks.  Applied
// to the blocks of a fitted estimator this reproduces the standardized
// integral statistic exactly; applied to a ConditionalDraw it has the same
// law by the representation above.  raw returns the implied integral value.
StatisticValue representation_statistic(const std::vector<Block>& blocks, long n,
                                        const FunctionalSpec& spec);
StatisticValue representation_statistic(const ConditionalDraw& draw,
                                        const FunctionalSpec& spec);

// Fast sampler for (V_n, W_n) alone: the block-size events form a Poisson
// process of total rate H_n over sizes j with weight 1/j, so a draw needs
// only Poisson(H_n) many size picks and one Gamma(j,1) per pick.
class VWSampler {
 public:
  explicit VWSampler(long n);
  std::pair<double, double> draw(Rng& rng) const;  // (V, W)
  long n() const { return n_; }

 private:
  long n_;
  double total_rate_;
  std::vector<double> cumulative_;  // cumulative 1/j weights
};

}  // namespace grenfun

#pragma once

#include <cstdint>
#include <vector>

#include "sgharm/extension.hpp"

namespace sgharm {

/// (N!) N^{-N}: the probability that N i.i.d. uniform letters are pairwise
/// distinct. This is the per-trial success constant used in the disjoint
/// binomial bound below; it is a conservative lower bound for the chance
/// that a length-(N-1) window is a block.
double exact_block_probability(int alphabet_size);

/// Monte Carlo estimate of exact_block_probability with a 3-sigma binomial
/// confidence interval.
struct BlockProbabilityResult {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double exact = 0.0;
  std::int64_t samples = 0;
};

BlockProbabilityResult block_probability(int alphabet_size, std::int64_t samples,
                                         std::uint64_t seed);

/// Binomial tail bound from splitting a length-n word into disjoint trials:
/// k = floor(n/(N-1)) - 2 trials, success probability p_N, threshold
/// l = log(n)/|log beta_norm|. When k p_N > l the Chernoff bound
/// exp(-(k p_N - l)^2 / (2 k p_N)) applies.
struct ChernoffBound {
  std::int64_t k = 0;
  double l = 0.0;
  double k_p = 0.0;
  double bound = 1.0;
  bool applicable = false;
};

ChernoffBound disjoint_trial_bound(int alphabet_size, std::int64_t n, double beta_norm_value);

/// Fraction of sampled uniform words of length n whose block count stays
/// below log(n)/|log beta_norm|, with 3-sigma confidence intervals and the
/// matching Chernoff bound per length.
struct FailureRow {
  std::int64_t n = 0;
  double fraction = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  ChernoffBound chernoff;
};

std::vector<FailureRow> failure_fraction(int alphabet_size, const std::vector<std::int64_t>& lengths,
                                         std::int64_t samples_per_length, std::uint64_t seed,
                                         double beta_norm_value);

}  // namespace sgharm

#include "sgharm/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "sgharm/errors.hpp"
#include "sgharm/rng.hpp"
#include "sgharm/word.hpp"

namespace sgharm {

namespace {

void ci3sigma(double fraction, std::int64_t samples, double* lo, double* hi) {
  const double sigma = std::sqrt(std::max(0.0, fraction * (1.0 - fraction)) /
                                 static_cast<double>(samples));
  *lo = std::max(0.0, fraction - 3.0 * sigma);
  *hi = std::min(1.0, fraction + 3.0 * sigma);
}

}  // namespace

double exact_block_probability(int alphabet_size) {
  if (alphabet_size < kMinAlphabet || alphabet_size > kMaxAlphabet) {
    throw ValidationError("exact_block_probability: alphabet size outside [3, 10]");
  }
  double p = 1.0;
  for (int k = 1; k <= alphabet_size; ++k) {
    p *= static_cast<double>(k) / alphabet_size;
  }
  return p;
}

BlockProbabilityResult block_probability(int alphabet_size, std::int64_t samples,
                                         std::uint64_t seed) {
  if (samples < 10000) {
    throw ValidationError("block_probability: need at least 1e4 samples");
  }
  const auto n = static_cast<std::uint32_t>(alphabet_size);
  BlockProbabilityResult result;
  result.exact = exact_block_probability(alphabet_size);
  result.samples = samples;

  Rng rng(seed);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    std::uint32_t seen = 0;
    bool distinct = true;
    for (std::uint32_t k = 0; k < n; ++k) {
      const std::uint32_t bit = 1u << rng.below(n);
      if (seen & bit) {
        distinct = false;
        break;
      }
      seen |= bit;
    }
    if (distinct) ++hits;
  }
  result.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  ci3sigma(result.estimate, samples, &result.ci_low, &result.ci_high);
  return result;
}

ChernoffBound disjoint_trial_bound(int alphabet_size, std::int64_t n, double beta_norm_value) {
  if (n < 3 * (alphabet_size - 1)) {
    throw ValidationError("disjoint_trial_bound: n too small for disjoint trials");
  }
  if (!(beta_norm_value > 0.0 && beta_norm_value < 1.0)) {
    throw ValidationError("disjoint_trial_bound: beta must lie in (0, 1)");
  }
  ChernoffBound out;
  out.k = n / (alphabet_size - 1) - 2;
  out.l = std::log(static_cast<double>(n)) / std::abs(std::log(beta_norm_value));
  out.k_p = static_cast<double>(out.k) * exact_block_probability(alphabet_size);
  if (out.k_p > out.l) {
    out.applicable = true;
    const double gap = out.k_p - out.l;
    out.bound = std::exp(-gap * gap / (2.0 * out.k_p));
  }
  return out;
}

std::vector<FailureRow> failure_fraction(int alphabet_size, const std::vector<std::int64_t>& lengths,
                                         std::int64_t samples_per_length, std::uint64_t seed,
                                         double beta_norm_value) {
  if (!std::is_sorted(lengths.begin(), lengths.end())) {
    throw ValidationError("failure_fraction: lengths must be increasing");
  }
  if (lengths.empty() || lengths.front() < alphabet_size) {
    throw ValidationError("failure_fraction: lengths must be at least the alphabet size");
  }
  if (samples_per_length < 1) throw ValidationError("failure_fraction: need samples");

  const auto window = static_cast<std::size_t>(alphabet_size - 1);
  std::vector<FailureRow> rows;
  rows.reserve(lengths.size());
  std::uint64_t stream = 0;
  for (const std::int64_t n : lengths) {
    const double threshold =
        std::log(static_cast<double>(n)) / std::abs(std::log(beta_norm_value));
    std::int64_t failures = 0;
    Rng rng(seed, stream++);
    std::vector<std::uint8_t> word(static_cast<std::size_t>(n));
    for (std::int64_t s = 0; s < samples_per_length; ++s) {
      for (auto& l : word) {
        l = static_cast<std::uint8_t>(rng.below(static_cast<std::uint32_t>(alphabet_size)));
      }
      // sliding-window block count
      std::int64_t count = 0;
      for (std::size_t i = 0; i + window <= word.size(); ++i) {
        std::uint32_t seen = 0;
        bool distinct = true;
        for (std::size_t j = i; j < i + window; ++j) {
          const std::uint32_t bit = 1u << word[j];
          if (seen & bit) {
            distinct = false;
            break;
          }
          seen |= bit;
        }
        if (distinct) ++count;
      }
      if (static_cast<double>(count) < threshold) ++failures;
    }
    FailureRow row;
    row.n = n;
    row.fraction = static_cast<double>(failures) / static_cast<double>(samples_per_length);
    ci3sigma(row.fraction, samples_per_length, &row.ci_low, &row.ci_high);
    if (n >= 3 * (alphabet_size - 1)) {
      row.chernoff = disjoint_trial_bound(alphabet_size, n, beta_norm_value);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sgharm

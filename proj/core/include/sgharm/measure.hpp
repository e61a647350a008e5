#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgharm/word.hpp"

namespace sgharm {

/// Self-similar Bernoulli measure given by weights on letter blocks of
/// length 1 or 2, together with the matching resistance scaling per block.
///
/// Weights are stored in radix order: for block_len 1 the index is the
/// letter, for block_len 2 the block (i, j) sits at index i*N + j.
struct MeasureSpec {
  int alphabet_size = kMinAlphabet;
  int block_len = 1;
  std::vector<double> weights;

  static MeasureSpec uniform(int alphabet_size, int block_len = 1);

  std::size_t block_count() const { return weights.size(); }

  /// The block starting at letter position `pos` of w.
  double block_weight(const Word& w, std::size_t pos) const;

  /// Block as a word, by radix index.
  Word block_word(std::size_t index) const;

  /// Resistance factor per block: (N/(N+2))^block_len.
  double resistance_factor() const;

  /// Positive weights summing to 1 within 1e-12, matching sizes.
  /// Throws ValidationError otherwise.
  void validate() const;
};

/// Measure of the level-n cell addressed by the first n letters of w.
/// n must be a multiple of block_len.
double measure_of_prefix(const MeasureSpec& spec, const Word& w, std::size_t n);

/// Resistance of a level-n cell: (N/(N+2))^n. Independent of the weights.
double resistance_of_prefix(int alphabet_size, std::size_t n);

/// Word of i.i.d. letter blocks drawn with the spec's probabilities.
/// Deterministic given the seed; blocks are drawn until `length` letters
/// are available, then truncated to exactly `length`.
Word sample_word(const MeasureSpec& spec, std::size_t length, std::uint64_t seed);

}  // namespace sgharm

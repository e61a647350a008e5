#include "sgharm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sgharm/errors.hpp"
#include "sgharm/rng.hpp"

namespace sgharm {

MeasureSpec MeasureSpec::uniform(int alphabet_size, int block_len) {
  MeasureSpec spec;
  spec.alphabet_size = alphabet_size;
  spec.block_len = block_len;
  std::size_t count = 1;
  for (int i = 0; i < block_len; ++i) count *= static_cast<std::size_t>(alphabet_size);
  spec.weights.assign(count, 1.0 / static_cast<double>(count));
  spec.validate();
  return spec;
}

double MeasureSpec::block_weight(const Word& w, std::size_t pos) const {
  std::size_t index = 0;
  for (int k = 0; k < block_len; ++k) {
    index = index * static_cast<std::size_t>(alphabet_size) + w.letters.at(pos + k);
  }
  return weights[index];
}

Word MeasureSpec::block_word(std::size_t index) const {
  Word w;
  w.alphabet_size = alphabet_size;
  w.letters.resize(static_cast<std::size_t>(block_len));
  for (int k = block_len - 1; k >= 0; --k) {
    w.letters[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(index % alphabet_size);
    index /= static_cast<std::size_t>(alphabet_size);
  }
  return w;
}

double MeasureSpec::resistance_factor() const {
  return std::pow(static_cast<double>(alphabet_size) / (alphabet_size + 2), block_len);
}

void MeasureSpec::validate() const {
  if (alphabet_size < kMinAlphabet || alphabet_size > kMaxAlphabet) {
    throw ValidationError("measure: alphabet size outside [3, 10]");
  }
  if (block_len != 1 && block_len != 2) {
    throw ValidationError("measure: block length must be 1 or 2");
  }
  std::size_t expect = 1;
  for (int i = 0; i < block_len; ++i) expect *= static_cast<std::size_t>(alphabet_size);
  if (weights.size() != expect) {
    throw ValidationError("measure: expected " + std::to_string(expect) + " weights, got " +
                          std::to_string(weights.size()));
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw ValidationError("measure: weights must be strictly positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("measure: weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

double measure_of_prefix(const MeasureSpec& spec, const Word& w, std::size_t n) {
  if (n % static_cast<std::size_t>(spec.block_len) != 0) {
    throw ValidationError("measure_of_prefix: level " + std::to_string(n) +
                          " is not a multiple of the block length");
  }
  if (w.size() < n) throw ValidationError("measure_of_prefix: word too short");
  double mu = 1.0;
  for (std::size_t pos = 0; pos < n; pos += static_cast<std::size_t>(spec.block_len)) {
    mu *= spec.block_weight(w, pos);
  }
  return mu;
}

double resistance_of_prefix(int alphabet_size, std::size_t n) {
  return std::pow(static_cast<double>(alphabet_size) / (alphabet_size + 2),
                  static_cast<double>(n));
}

Word sample_word(const MeasureSpec& spec, std::size_t length, std::uint64_t seed) {
  spec.validate();
  std::vector<double> cdf(spec.weights.size());
  std::partial_sum(spec.weights.begin(), spec.weights.end(), cdf.begin());
  cdf.back() = 1.0;

  Rng rng(seed);
  Word w;
  w.alphabet_size = spec.alphabet_size;
  w.letters.reserve(length + static_cast<std::size_t>(spec.block_len));
  while (w.letters.size() < length) {
    const double u = rng.uniform();
    std::size_t index = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (index >= cdf.size()) index = cdf.size() - 1;
    const Word block = spec.block_word(index);
    w.letters.insert(w.letters.end(), block.letters.begin(), block.letters.end());
  }
  w.letters.resize(length);
  return w;
}

}  // namespace sgharm

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sgharm {

inline constexpr int kMinAlphabet = 3;
inline constexpr int kMaxAlphabet = 10;

/// A finite word over the alphabet {0, ..., alphabet_size - 1}. Infinite
/// words are always handled through materialized prefixes of explicit
/// length (see parse_word_spec), so every operation takes the word itself
/// plus the level n it needs.
struct Word {
  std::vector<std::uint8_t> letters;
  int alphabet_size = kMinAlphabet;

  Word() = default;
  Word(std::vector<std::uint8_t> l, int n) : letters(std::move(l)), alphabet_size(n) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  std::uint8_t operator[](std::size_t i) const { return letters[i]; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.alphabet_size == b.alphabet_size && a.letters == b.letters;
  }

  /// Throws ValidationError if a letter is outside the alphabet or the
  /// alphabet size is unsupported.
  void validate() const;
};

/// Digits of the word, e.g. "0121". Empty word renders as "".
std::string to_string(const Word& w);

/// Word from a digit string; alphabet letters are single digits (N <= 10).
Word word_from_digits(const std::string& digits, int alphabet_size);

/// First n letters of w. Throws ValidationError if w is shorter than n.
Word truncate(const Word& w, std::size_t n);

/// True iff all letters are pairwise distinct. The word must be nonempty.
bool is_block(const Word& w);

/// Levelwise block statistics of a word prefix.
///
/// count[m-1] is the number of sliding windows of length N-1 inside the
/// first m letters whose letters are pairwise distinct (windows overlap,
/// stride 1). density_ratio[m-1] = count / log(m), NaN at m = 1.
struct BlockReport {
  int alphabet_size = kMinAlphabet;
  std::vector<std::int64_t> count;
  std::vector<double> density_ratio;

  std::int64_t count_at(std::size_t level) const { return count.at(level - 1); }
};

BlockReport count_blocks(const Word& w, std::size_t n);

/// All words of length N-1 over {0..N-1} with pairwise distinct letters,
/// in lexicographic order. There are exactly N! of them.
std::vector<Word> enumerate_blocks(int alphabet_size);

/// Parses a word description and materializes the first `length` letters.
///   "per:012"   periodic repetition of the given digits
///   "w:00121"   explicit word (must supply at least `length` letters)
///   "rand:7"    uniform i.i.d. letters from the seeded generator
Word parse_word_spec(const std::string& spec, int alphabet_size, std::size_t length);

}  // namespace sgharm

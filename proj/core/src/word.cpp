#include "sgharm/word.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgharm/errors.hpp"
#include "sgharm/rng.hpp"

namespace sgharm {

void Word::validate() const {
  if (alphabet_size < kMinAlphabet || alphabet_size > kMaxAlphabet) {
    throw ValidationError("word: alphabet size " + std::to_string(alphabet_size) +
                          " outside supported range [3, 10]");
  }
  for (std::uint8_t l : letters) {
    if (l >= alphabet_size) {
      throw ValidationError("word: letter " + std::to_string(int(l)) +
                            " outside alphabet of size " + std::to_string(alphabet_size));
    }
  }
}

std::string to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (std::uint8_t l : w.letters) s.push_back(static_cast<char>('0' + l));
  return s;
}

Word word_from_digits(const std::string& digits, int alphabet_size) {
  Word w;
  w.alphabet_size = alphabet_size;
  w.letters.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw ValidationError(std::string("word: bad digit '") + c + "'");
    w.letters.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  w.validate();
  return w;
}

Word truncate(const Word& w, std::size_t n) {
  if (w.size() < n) {
    throw ValidationError("truncate: word has " + std::to_string(w.size()) +
                          " letters, need " + std::to_string(n));
  }
  Word out;
  out.alphabet_size = w.alphabet_size;
  out.letters.assign(w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

bool is_block(const Word& w) {
  if (w.empty()) throw ValidationError("is_block: empty word");
  std::uint32_t seen = 0;
  for (std::uint8_t l : w.letters) {
    const std::uint32_t bit = 1u << l;
    if (seen & bit) return false;
    seen |= bit;
  }
  return true;
}

namespace {

// Is the window of length N-1 ending at position `end` (exclusive) a block?
bool window_is_block(const Word& w, std::size_t end) {
  const std::size_t len = static_cast<std::size_t>(w.alphabet_size - 1);
  std::uint32_t seen = 0;
  for (std::size_t i = end - len; i < end; ++i) {
    const std::uint32_t bit = 1u << w.letters[i];
    if (seen & bit) return false;
    seen |= bit;
  }
  return true;
}

}  // namespace

BlockReport count_blocks(const Word& w, std::size_t n) {
  w.validate();
  if (w.size() < n) {
    throw ValidationError("count_blocks: word has " + std::to_string(w.size()) +
                          " letters, need " + std::to_string(n));
  }
  const std::size_t window = static_cast<std::size_t>(w.alphabet_size - 1);
  BlockReport report;
  report.alphabet_size = w.alphabet_size;
  report.count.resize(n);
  report.density_ratio.resize(n);
  std::int64_t running = 0;
  for (std::size_t m = 1; m <= n; ++m) {
    if (m >= window && window_is_block(w, m)) ++running;
    report.count[m - 1] = running;
    report.density_ratio[m - 1] =
        (m >= 2) ? static_cast<double>(running) / std::log(static_cast<double>(m))
                 : std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

std::vector<Word> enumerate_blocks(int alphabet_size) {
  if (alphabet_size < kMinAlphabet || alphabet_size > kMaxAlphabet) {
    throw ValidationError("enumerate_blocks: alphabet size outside [3, 10]");
  }
  const int len = alphabet_size - 1;
  std::vector<Word> out;
  std::vector<std::uint8_t> current;
  std::uint32_t used = 0;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == len) {
      out.emplace_back(current, alphabet_size);
      return;
    }
    for (std::uint8_t l = 0; l < alphabet_size; ++l) {
      const std::uint32_t bit = 1u << l;
      if (used & bit) continue;
      used |= bit;
      current.push_back(l);
      self(self);
      current.pop_back();
      used &= ~bit;
    }
  };
  rec(rec);
  return out;
}

Word parse_word_spec(const std::string& spec, int alphabet_size, std::size_t length) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ValidationError("word spec '" + spec + "': expected per:<digits>, w:<digits> or rand:<seed>");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  Word w;
  w.alphabet_size = alphabet_size;
  if (kind == "per") {
    const Word period = word_from_digits(arg, alphabet_size);
    if (period.empty()) throw ValidationError("word spec: empty period");
    w.letters.reserve(length);
    for (std::size_t i = 0; i < length; ++i) w.letters.push_back(period[i % period.size()]);
  } else if (kind == "w") {
    const Word full = word_from_digits(arg, alphabet_size);
    if (full.size() < length) {
      throw ValidationError("word spec: explicit word has " + std::to_string(full.size()) +
                            " letters, need " + std::to_string(length));
    }
    return truncate(full, length);
  } else if (kind == "rand") {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(arg);
    } catch (const std::exception&) {
      throw ValidationError("word spec: bad seed '" + arg + "'");
    }
    Rng rng(seed);
    w.letters.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
      w.letters.push_back(static_cast<std::uint8_t>(rng.below(static_cast<std::uint32_t>(alphabet_size))));
    }
  } else {
    throw ValidationError("word spec: unknown kind '" + kind + "'");
  }
  w.validate();
  return w;
}

}  // namespace sgharm

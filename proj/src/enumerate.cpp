#include "cantor/enumerate.hpp"

namespace cantor {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kCountSaturated / b) return kCountSaturated;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  if (a > kCountSaturated - b) return kCountSaturated;
  return a + b;
}

std::uint64_t reduced_word_count(std::size_t letter_count, std::size_t length) {
  if (length == 0) return 1;
  std::uint64_t n = letter_count;
  std::uint64_t out = n;
  for (std::size_t i = 1; i < length; ++i) out = saturating_mul(out, n - 1);
  return out;
}

std::uint64_t reduced_words_up_to(std::size_t letter_count, std::size_t max_len) {
  std::uint64_t total = 0;
  for (std::size_t len = 0; len <= max_len; ++len)
    total = saturating_add(total, reduced_word_count(letter_count, len));
  return total;
}

bool next_reduced_word(std::size_t letter_count, std::vector<Letter>& letters) {
  std::size_t n = letters.size();
  for (std::size_t i = n; i-- > 0;) {
    std::size_t cand = static_cast<std::size_t>(letters[i]) + 1;
    if (i > 0 && cand == letter_inverse(letters[i - 1])) ++cand;
    if (cand < letter_count) {
      letters[i] = static_cast<Letter>(cand);
      for (std::size_t j = i + 1; j < n; ++j)
        letters[j] = letter_inverse(letters[j - 1]) == 0 ? 1 : 0;
      return true;
    }
  }
  return false;
}

Word unrank_reduced_word(std::size_t letter_count, std::size_t length, std::uint64_t rank) {
  std::vector<Letter> letters(length);
  if (length == 0) return Word();
  std::uint64_t block = reduced_word_count(letter_count, length) / letter_count;
  // block = (2k-1)^(length-1); safe because callers range-check rank
  Letter prev = 0;
  for (std::size_t i = 0; i < length; ++i) {
    std::uint64_t digit = rank / block;
    rank %= block;
    Letter cand;
    if (i == 0) {
      cand = static_cast<Letter>(digit);
    } else {
      Letter forbidden = letter_inverse(prev);
      cand = static_cast<Letter>(digit < forbidden ? digit : digit + 1);
    }
    letters[i] = cand;
    prev = cand;
    if (i + 1 < length) block /= (letter_count - 1);
  }
  return Word(std::move(letters));
}

}  // namespace cantor

#ifndef CANTOR_ENUMERATE_HPP
#define CANTOR_ENUMERATE_HPP

#include <cstdint>
#include <limits>

#include "cantor/word.hpp"

namespace cantor {

// Canonical enumeration of freely reduced words: by length, then
// lexicographically by letter code.  Within one length the words admit
// rank/unrank, which is what the parallel scans index by.

inline constexpr std::uint64_t kCountSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b);

// Number of reduced words of exactly `length` letters: 2k*(2k-1)^(length-1).
std::uint64_t reduced_word_count(std::size_t letter_count, std::size_t length);

// Number of reduced words of length <= max_len, including the empty word.
std::uint64_t reduced_words_up_to(std::size_t letter_count, std::size_t max_len);

// rank-th reduced word of the given length, in lexicographic order.
Word unrank_reduced_word(std::size_t letter_count, std::size_t length, std::uint64_t rank);

// Advance a reduced word of fixed length to its lexicographic successor in
// place; false once the last word is reached.
bool next_reduced_word(std::size_t letter_count, std::vector<Letter>& letters);

// Serial walk over the reduced words of one exact length, in lexicographic
// order.  f(word) returns false to stop early; so does the function.
template <class F>
bool for_each_reduced_word_of_length(std::size_t letter_count, std::size_t len, F&& f) {
  if (len == 0) {
    Word empty;
    return f(empty);
  }
  std::vector<Letter> letters(len, 0);
  std::vector<std::size_t> pending(len, 0);
  std::size_t depth = 0;
  while (true) {
    if (pending[depth] >= letter_count) {
      if (depth == 0) return true;
      --depth;
      ++pending[depth];
      continue;
    }
    Letter cand = static_cast<Letter>(pending[depth]);
    if (depth > 0 && cand == letter_inverse(letters[depth - 1])) {
      ++pending[depth];
      continue;
    }
    letters[depth] = cand;
    if (depth + 1 == len) {
      if (!f(Word(std::vector<Letter>(letters.begin(), letters.end())))) return false;
      ++pending[depth];
    } else {
      ++depth;
      pending[depth] = 0;
    }
  }
}

// Serial reference enumeration by length, then lexicographically.
template <class F>
bool for_each_reduced_word(std::size_t letter_count, std::size_t max_len, F&& f) {
  for (std::size_t len = 0; len <= max_len; ++len)
    if (!for_each_reduced_word_of_length(letter_count, len, f)) return false;
  return true;
}

}  // namespace cantor

#endif

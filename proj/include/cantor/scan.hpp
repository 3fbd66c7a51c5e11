#ifndef CANTOR_SCAN_HPP
#define CANTOR_SCAN_HPP

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantor/enumerate.hpp"
#include "cantor/word.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cantor {

enum class ExecMode { Serial, Parallel };

inline ExecMode default_exec_mode() {
#ifdef _OPENMP
  return ExecMode::Parallel;
#else
  return ExecMode::Serial;
#endif
}

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Length blocks smaller than this run serially even in parallel mode; the
// fork/join cost swamps them.
inline constexpr std::uint64_t kParallelBlockThreshold = 4096;

// Ranks handed to a worker at a time; one unrank per chunk, then
// incremental stepping.
inline constexpr std::uint64_t kScanChunk = 1024;

// Bounds for the word searches.  word_bound is the maximum reduced word
// length L; depth is the level bound D where an operation uses one; budget
// caps the number of candidate words a scan may enumerate.
struct SearchLimits {
  std::size_t word_bound = 0;
  std::size_t depth = 0;
  std::uint64_t budget = kDefaultBudget;
  ExecMode exec = default_exec_mode();
};

inline void check_budget(std::size_t letter_count, std::size_t max_len, std::uint64_t budget) {
  std::uint64_t need = reduced_words_up_to(letter_count, max_len);
  if (need > budget)
    throw BudgetError("word scan needs " +
                      (need == kCountSaturated ? std::string("too many")
                                               : std::to_string(need)) +
                      " candidates, over the cap of " + std::to_string(budget));
}

// First reduced word of length <= max_len satisfying pred, in canonical
// order (length, then lex).  The parallel path returns exactly the word the
// serial reference would.
template <class Pred>
std::optional<Word> find_first_word(std::size_t letter_count, std::size_t max_len,
                                    std::uint64_t budget, ExecMode exec, Pred&& pred) {
  check_budget(letter_count, max_len, budget);
#ifndef _OPENMP
  exec = ExecMode::Serial;
#endif
  if (exec == ExecMode::Serial) {
    std::optional<Word> hit;
    for_each_reduced_word(letter_count, max_len, [&](const Word& w) {
      if (pred(w)) {
        hit = w;
        return false;
      }
      return true;
    });
    return hit;
  }
#ifdef _OPENMP
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::uint64_t count = reduced_word_count(letter_count, len);
    if (count < kParallelBlockThreshold) {
      std::optional<Word> hit;
      for_each_reduced_word_of_length(letter_count, len, [&](const Word& w) {
        if (pred(w)) {
          hit = w;
          return false;
        }
        return true;
      });
      if (hit) return hit;
      continue;
    }
    std::atomic<std::uint64_t> best(kCountSaturated);
    long long chunks =
        static_cast<long long>((count + kScanChunk - 1) / kScanChunk);
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < chunks; ++c) {
      std::uint64_t start = static_cast<std::uint64_t>(c) * kScanChunk;
      std::uint64_t stop = std::min<std::uint64_t>(count, start + kScanChunk);
      if (start >= best.load(std::memory_order_relaxed)) continue;
      std::vector<Letter> buffer = unrank_reduced_word(letter_count, len, start).letters();
      for (std::uint64_t rank = start; rank < stop; ++rank) {
        if (rank >= best.load(std::memory_order_relaxed)) break;
        Word w(buffer);
        if (pred(w)) {
          std::uint64_t cur = best.load(std::memory_order_relaxed);
          while (rank < cur && !best.compare_exchange_weak(cur, rank)) {
          }
          break;  // nothing later in this chunk can beat it
        }
        if (rank + 1 < stop) next_reduced_word(letter_count, buffer);
      }
    }
    std::uint64_t hit = best.load();
    if (hit != kCountSaturated) return unrank_reduced_word(letter_count, len, hit);
  }
#endif
  return std::nullopt;
}

// All reduced words of length <= max_len satisfying pred, in canonical order.
template <class Pred>
std::vector<Word> collect_words(std::size_t letter_count, std::size_t max_len,
                                std::uint64_t budget, ExecMode exec, Pred&& pred) {
  check_budget(letter_count, max_len, budget);
#ifndef _OPENMP
  exec = ExecMode::Serial;
#endif
  std::vector<Word> out;
  if (exec == ExecMode::Serial) {
    for_each_reduced_word(letter_count, max_len, [&](const Word& w) {
      if (pred(w)) out.push_back(w);
      return true;
    });
    return out;
  }
#ifdef _OPENMP
  if (Word w; pred(w)) out.push_back(w);
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::uint64_t count = reduced_word_count(letter_count, len);
    if (count < kParallelBlockThreshold) {
      for_each_reduced_word_of_length(letter_count, len, [&](const Word& w) {
        if (pred(w)) out.push_back(w);
        return true;
      });
      continue;
    }
    std::vector<unsigned char> hits(count, 0);
    long long chunks =
        static_cast<long long>((count + kScanChunk - 1) / kScanChunk);
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < chunks; ++c) {
      std::uint64_t start = static_cast<std::uint64_t>(c) * kScanChunk;
      std::uint64_t stop = std::min<std::uint64_t>(count, start + kScanChunk);
      std::vector<Letter> buffer = unrank_reduced_word(letter_count, len, start).letters();
      for (std::uint64_t rank = start; rank < stop; ++rank) {
        Word w(buffer);
        if (pred(w)) hits[static_cast<std::size_t>(rank)] = 1;
        if (rank + 1 < stop) next_reduced_word(letter_count, buffer);
      }
    }
    for (std::uint64_t r = 0; r < count; ++r)
      if (hits[r]) out.push_back(unrank_reduced_word(letter_count, len, r));
  }
#endif
  return out;
}

}  // namespace cantor

#endif

#include <doctest.h>

#include "cantor/enumerate.hpp"
#include "cantor/scan.hpp"

using namespace cantor;

TEST_CASE("reduced word counts") {
  // 2 letters (one generator): exactly t^n and t^-n at each length
  CHECK(reduced_word_count(2, 0) == 1);
  CHECK(reduced_word_count(2, 1) == 2);
  CHECK(reduced_word_count(2, 5) == 2);
  // 4 letters: 4 * 3^(n-1)
  CHECK(reduced_word_count(4, 1) == 4);
  CHECK(reduced_word_count(4, 2) == 12);
  CHECK(reduced_word_count(4, 3) == 36);
  CHECK(reduced_words_up_to(4, 3) == 1 + 4 + 12 + 36);
  // saturates instead of overflowing
  CHECK(reduced_word_count(64, 40) == kCountSaturated);
}

TEST_CASE("unrank matches the serial enumeration") {
  for (std::size_t letters : {2u, 4u, 8u}) {
    std::vector<Word> serial;
    for_each_reduced_word(letters, 4, [&](const Word& w) {
      serial.push_back(w);
      return true;
    });
    CHECK(serial.size() == reduced_words_up_to(letters, 4));
    std::size_t at = 0;
    for (std::size_t len = 0; len <= 4; ++len) {
      for (std::uint64_t rank = 0; rank < reduced_word_count(letters, len); ++rank, ++at) {
        REQUIRE(at < serial.size());
        CHECK(unrank_reduced_word(letters, len, rank) == serial[at]);
      }
    }
    // every enumerated word is freely reduced, and the order is canonical
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].is_reduced());
      if (i + 1 < serial.size()) CHECK(word_order_less(serial[i], serial[i + 1]));
    }
  }
}

TEST_CASE("serial enumeration stops early") {
  int count = 0;
  bool finished = for_each_reduced_word(4, 3, [&](const Word&) { return ++count < 10; });
  CHECK(!finished);
  CHECK(count == 10);
}

TEST_CASE("in-place successor walks the whole length block") {
  for (std::size_t letters : {2u, 6u}) {
    for (std::size_t len : {1u, 3u, 4u}) {
      std::vector<Letter> buffer = unrank_reduced_word(letters, len, 0).letters();
      std::uint64_t rank = 0;
      do {
        CHECK(Word(buffer) == unrank_reduced_word(letters, len, rank));
        ++rank;
      } while (next_reduced_word(letters, buffer));
      CHECK(rank == reduced_word_count(letters, len));
    }
  }
}

TEST_CASE("scan kernels agree across execution modes") {
  auto pred = [](const Word& w) {
    // arbitrary but deterministic: length 3 and first letter equals 2
    return w.length() == 3 && w.letter(0) == 2;
  };
  auto serial_hit = find_first_word(6, 4, kDefaultBudget, ExecMode::Serial, pred);
  auto parallel_hit = find_first_word(6, 4, kDefaultBudget, ExecMode::Parallel, pred);
  REQUIRE(serial_hit.has_value());
  CHECK(*serial_hit == *parallel_hit);

  auto serial_all = collect_words(6, 4, kDefaultBudget, ExecMode::Serial, pred);
  auto parallel_all = collect_words(6, 4, kDefaultBudget, ExecMode::Parallel, pred);
  CHECK(serial_all == parallel_all);
  CHECK(serial_all.size() == 25);  // 5*5 continuations of the fixed first letter
}

TEST_CASE("chunked parallel blocks match the serial reference") {
  // 8 letters at length 5 crosses the parallel threshold
  auto pred = [](const Word& w) { return w.length() >= 4 && w.letter(1) == w.letter(3); };
  auto serial = collect_words(8, 5, kDefaultBudget, ExecMode::Serial, pred);
  auto parallel = collect_words(8, 5, kDefaultBudget, ExecMode::Parallel, pred);
  CHECK(serial == parallel);

  auto deep = [](const Word& w) { return w.length() == 5 && w.letters().back() == 7; };
  auto sfirst = find_first_word(8, 5, kDefaultBudget, ExecMode::Serial, deep);
  auto pfirst = find_first_word(8, 5, kDefaultBudget, ExecMode::Parallel, deep);
  REQUIRE(sfirst.has_value());
  CHECK(*sfirst == *pfirst);
}

TEST_CASE("budget error names the cap") {
  try {
    find_first_word(8, 10, 1000, ExecMode::Serial, [](const Word&) { return false; });
    FAIL("expected a budget error");
  } catch (const BudgetError& e) {
    CHECK(std::string(e.what()).find("1000") != std::string::npos);
  }
}

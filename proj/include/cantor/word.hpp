#ifndef CANTOR_WORD_HPP
#define CANTOR_WORD_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A letter is 2*symbol for a plain generator and 2*symbol+1 for its formal
// inverse, so ascending letter codes give the canonical order
// a < a^-1 < b < b^-1 < ...
using Letter = std::uint16_t;

constexpr Letter letter_inverse(Letter l) { return static_cast<Letter>(l ^ 1u); }
constexpr std::size_t letter_symbol(Letter l) { return l >> 1; }
constexpr bool letter_is_inverse(Letter l) { return (l & 1u) != 0; }
constexpr Letter plain_letter(std::size_t symbol) { return static_cast<Letter>(symbol << 1); }

// Ordered set of named generators. Each symbol carries a formal inverse;
// the name "e" is reserved for the empty word.
class GeneratorAlphabet {
 public:
  explicit GeneratorAlphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  std::size_t letter_count() const { return symbols_.size() * 2; }
  const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::string letter_name(Letter l) const;

  bool operator==(const GeneratorAlphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
};

// A word over an alphabet and its formal inverses. Words are plain letter
// sequences; free reduction is explicit via reduce().
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word single(Letter l) { return Word(std::vector<Letter>{l}); }

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter letter(std::size_t i) const { return letters_[i]; }

  // Concatenation; under the left-action convention the result acts as
  // lhs after rhs.
  Word operator*(const Word& rhs) const;
  Word inverse() const;
  bool is_reduced() const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

// Iterated cancellation of adjacent letter/inverse pairs. Idempotent.
Word reduce(const Word& w);

Word power(const Word& w, int exponent);

// Canonical order: length first, then lexicographic by letter code.
bool word_order_less(const Word& a, const Word& b);

// Text form: symbols joined by '.', '^-1' marks an inverse, "e" is the
// empty word.  Example: "t.t.s^-1".
std::string format_word(const GeneratorAlphabet& alphabet, const Word& w);
Word parse_word(const GeneratorAlphabet& alphabet, std::string_view text);

}  // namespace cantor

#endif

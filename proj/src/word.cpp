#include "cantor/word.hpp"

#include <algorithm>
#include <cctype>

namespace cantor {

namespace {

bool valid_symbol_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

}  // namespace

GeneratorAlphabet::GeneratorAlphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InvalidInput("alphabet must not be empty");
  for (const auto& s : symbols_) {
    if (!valid_symbol_name(s))
      throw InvalidInput("bad generator name '" + s + "'");
    if (s == "e") throw InvalidInput("generator name 'e' is reserved for the empty word");
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    for (std::size_t j = i + 1; j < symbols_.size(); ++j)
      if (symbols_[i] == symbols_[j])
        throw InvalidInput("duplicate generator name '" + symbols_[i] + "'");
}

std::optional<std::size_t> GeneratorAlphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == name) return i;
  return std::nullopt;
}

std::string GeneratorAlphabet::letter_name(Letter l) const {
  std::string s = symbols_.at(letter_symbol(l));
  if (letter_is_inverse(l)) s += "^-1";
  return s;
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = letter_inverse(l);
  return Word(std::move(out));
}

bool Word::is_reduced() const {
  for (std::size_t i = 1; i < letters_.size(); ++i)
    if (letters_[i] == letter_inverse(letters_[i - 1])) return false;
  return true;
}

Word reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.length());
  for (Letter l : w.letters()) {
    if (!stack.empty() && stack.back() == letter_inverse(l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

Word power(const Word& w, int exponent) {
  Word base = exponent < 0 ? w.inverse() : w;
  int n = exponent < 0 ? -exponent : exponent;
  Word out;
  for (int i = 0; i < n; ++i) out = out * base;
  return out;
}

bool word_order_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.letters() < b.letters();
}

std::string format_word(const GeneratorAlphabet& alphabet, const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) out += '.';
    out += alphabet.letter_name(w.letter(i));
  }
  return out;
}

Word parse_word(const GeneratorAlphabet& alphabet, std::string_view text) {
  if (text == "e" || text.empty()) return Word();
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string_view tok = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    bool inv = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inv = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    auto sym = alphabet.find(tok);
    if (!sym) throw InvalidInput("unknown generator '" + std::string(tok) + "' in word");
    Letter l = plain_letter(*sym);
    letters.push_back(inv ? letter_inverse(l) : l);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return Word(std::move(letters));
}

}  // namespace cantor

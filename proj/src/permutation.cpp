#include "cantor/permutation.hpp"

#include <numeric>
#include <sstream>

namespace cantor {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v])
      throw InvalidInput("image table is not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint32_t> im(n);
  std::iota(im.begin(), im.end(), 0u);
  return Permutation(std::move(im));
}

Permutation Permutation::operator*(const Permutation& g) const {
  if (degree() != g.degree()) throw InvalidInput("permutation degree mismatch");
  std::vector<std::uint32_t> im(degree());
  for (std::size_t x = 0; x < degree(); ++x) im[x] = images_[g.images_[x]];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> im(degree());
  for (std::size_t x = 0; x < degree(); ++x) im[images_[x]] = static_cast<std::uint32_t>(x);
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < degree(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(degree(), false);
  std::uint64_t ord = 1;
  for (std::size_t x = 0; x < degree(); ++x) {
    if (seen[x]) continue;
    std::uint64_t len = 0;
    std::uint32_t y = static_cast<std::uint32_t>(x);
    do {
      seen[y] = true;
      y = images_[y];
      ++len;
    } while (y != x);
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string format_cycles(const Permutation& p) {
  std::vector<bool> seen(p.degree(), false);
  std::string out;
  for (std::size_t x = 0; x < p.degree(); ++x) {
    if (seen[x] || p(static_cast<std::uint32_t>(x)) == x) {
      seen[x] = true;
      continue;
    }
    out += '(';
    std::uint32_t y = static_cast<std::uint32_t>(x);
    bool first = true;
    do {
      if (!first) out += ' ';
      out += std::to_string(y);
      seen[y] = true;
      y = p(y);
      first = false;
    } while (y != x);
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::uint32_t> im(degree);
  std::iota(im.begin(), im.end(), 0u);
  std::vector<bool> named(degree, false);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw InvalidInput("expected '(' in cycle notation");
    ++pos;
    std::vector<std::uint32_t> cycle;
    skip_space();
    while (pos < text.size() && text[pos] != ')') {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) throw InvalidInput("expected point index in cycle notation");
      unsigned long v = std::stoul(std::string(text.substr(start, pos - start)));
      if (v >= degree) throw InvalidInput("cycle point out of range");
      if (named[v]) throw InvalidInput("point " + std::to_string(v) + " named twice in cycles");
      named[v] = true;
      cycle.push_back(static_cast<std::uint32_t>(v));
      skip_space();
    }
    if (pos >= text.size()) throw InvalidInput("unterminated cycle");
    ++pos;  // ')'
    for (std::size_t i = 0; i < cycle.size(); ++i)
      im[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_space();
  }
  return Permutation(std::move(im));
}

}  // namespace cantor

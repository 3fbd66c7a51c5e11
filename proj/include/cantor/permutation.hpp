#ifndef CANTOR_PERMUTATION_HPP
#define CANTOR_PERMUTATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/word.hpp"

namespace cantor {

// Permutation of {0..n-1} stored as an image table.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(std::size_t n);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  // (f * g)(x) = f(g(x)): f acts after g.
  Permutation operator*(const Permutation& g) const;
  Permutation inverse() const;
  bool is_identity() const;
  std::uint64_t order() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

// Cycle notation, e.g. "(0 1)(2 3)"; "()" is the identity.
std::string format_cycles(const Permutation& p);
Permutation parse_cycles(std::string_view text, std::size_t degree);

}  // namespace cantor

#endif

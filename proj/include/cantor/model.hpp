#ifndef CANTOR_MODEL_HPP
#define CANTOR_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantor/permutation.hpp"
#include "cantor/scan.hpp"
#include "cantor/word.hpp"

namespace cantor {

// One finite level of a group-chain action: the permutation action of the
// generators on a finite point set, plus the projection onto the previous
// level.
struct ActionLevel {
  std::size_t level = 0;
  std::size_t point_count = 0;
  std::vector<Permutation> generator_images;  // one per alphabet symbol
  std::vector<std::uint32_t> projection;      // to level-1; empty at level 0
  std::uint32_t basepoint = 0;
};

struct LevelCheck {
  std::size_t level = 0;
  bool transitive = true;
  bool equivariant = true;
  bool basepoint_compatible = true;
  bool fibers_uniform = true;
  // offending (generator symbol, point) for an equivariance failure
  std::optional<std::pair<std::size_t, std::uint32_t>> equivariance_witness;
  bool ok() const { return transitive && equivariant && basepoint_compatible && fibers_uniform; }
};

struct ValidationReport {
  std::vector<LevelCheck> levels;
  bool valid() const {
    for (const auto& l : levels)
      if (!l.ok()) return false;
    return true;
  }
};

// Finitely generated group acting level-by-level on nested finite sets.
// Immutable after construction; all queries are pure.
class ChainModel {
 public:
  ChainModel(GeneratorAlphabet alphabet, std::vector<ActionLevel> levels, std::string name);

  const GeneratorAlphabet& alphabet() const { return alphabet_; }
  const std::string& name() const { return name_; }
  std::size_t max_level() const { return levels_.size() - 1; }
  const ActionLevel& level(std::size_t l) const { return levels_.at(l); }
  std::size_t points(std::size_t l) const { return levels_.at(l).point_count; }
  std::uint32_t basepoint(std::size_t l) const { return levels_.at(l).basepoint; }

  std::uint32_t project(std::size_t l, std::uint32_t point) const {
    return levels_[l].projection[point];
  }
  // children of a level-(l-1) point among level-l points, ascending
  const std::vector<std::uint32_t>& fiber(std::size_t l, std::uint32_t parent) const {
    return children_.at(l).at(parent);
  }
  std::uint32_t ancestor(std::size_t l, std::uint32_t point, std::size_t target_level) const;

  const Permutation& letter_image(std::size_t l, Letter letter) const {
    return letter_images_[l][letter];
  }
  std::uint32_t apply_letter(std::size_t l, Letter letter, std::uint32_t point) const {
    return letter_images_[l][letter](point);
  }
  // Left action: the last letter acts first.  Rejects letters outside the
  // alphabet.
  std::uint32_t apply_word(std::size_t l, const Word& w, std::uint32_t point) const;
  Permutation level_image(const Word& w, std::size_t l) const;
  bool word_trivial_at(const Word& w, std::size_t l) const;

  bool stabilizer_member(const Word& w, std::size_t l) const {
    return apply_word(l, w, basepoint(l)) == basepoint(l);
  }

 private:
  GeneratorAlphabet alphabet_;
  std::vector<ActionLevel> levels_;
  std::string name_;
  std::vector<std::vector<Permutation>> letter_images_;          // [level][letter]
  std::vector<std::vector<std::vector<std::uint32_t>>> children_;  // [level][parent]
};

ValidationReport validate_chain(const ChainModel& m);

// Reduced words of length <= L acting trivially at the given level,
// deduplicated by their action at the deepest level (the model's word
// resolution); the representative is the first word in canonical order.
std::vector<Word> kernel_words(const ChainModel& m, std::size_t level, const SearchLimits& limits);

// BFS closure of a point under the generators, truncated at word length L.
std::vector<std::uint32_t> orbit_of_point(const ChainModel& m, std::size_t level,
                                          std::uint32_t point, std::size_t word_bound);

// Coordinates x_0..x_D of a point of the truncated inverse limit.
struct PathPoint {
  std::vector<std::uint32_t> coords;
  std::size_t depth() const { return coords.size() - 1; }
};

PathPoint make_path_point(const ChainModel& m, const std::vector<std::uint32_t>& coords);
PathPoint basepoint_path(const ChainModel& m, std::size_t depth);

}  // namespace cantor

#endif

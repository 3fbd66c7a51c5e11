#ifndef CANTOR_CLOPEN_HPP
#define CANTOR_CLOPEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/model.hpp"

namespace cantor {

// Finite union of cylinder sets at a stated resolution level.  Cells are
// kept sorted and deduplicated; the set is model-relative.
class Clopen {
 public:
  Clopen() : level_(0) {}
  Clopen(std::size_t level, std::vector<std::uint32_t> cells);

  static Clopen empty(std::size_t level) { return Clopen(level, {}); }
  static Clopen cylinder(std::size_t level, std::uint32_t cell) { return Clopen(level, {cell}); }
  static Clopen full_space(const ChainModel& m, std::size_t level);
  static Clopen basepoint_cylinder(const ChainModel& m, std::size_t level) {
    return cylinder(level, m.basepoint(level));
  }

  std::size_t level() const { return level_; }
  const std::vector<std::uint32_t>& cells() const { return cells_; }
  bool is_empty() const { return cells_.empty(); }
  std::size_t cell_count() const { return cells_.size(); }
  bool contains_cell(std::uint32_t cell) const;

  bool operator==(const Clopen&) const = default;

 private:
  std::size_t level_;
  std::vector<std::uint32_t> cells_;
};

void check_clopen(const ChainModel& m, const Clopen& a);

// Every cell replaced by its fiber at the deeper level.
Clopen refine_to_level(const ChainModel& m, const Clopen& a, std::size_t level);

// Coarsen while the set is a union of complete fibers; idempotent.
Clopen canonicalize(const ChainModel& m, const Clopen& a);

Clopen clopen_union(const ChainModel& m, const Clopen& a, const Clopen& b);
Clopen clopen_intersection(const ChainModel& m, const Clopen& a, const Clopen& b);
Clopen clopen_complement(const ChainModel& m, const Clopen& a);
bool clopen_subset(const ChainModel& m, const Clopen& a, const Clopen& b);
bool clopen_equal(const ChainModel& m, const Clopen& a, const Clopen& b);

// Cellwise image under the level action of w; preserves cell count.
Clopen translate_clopen(const ChainModel& m, const Word& w, const Clopen& a);

// Is the cylinder over `cell` contained in U (after common refinement)?
bool cylinder_in_clopen(const ChainModel& m, std::size_t level, std::uint32_t cell,
                        const Clopen& u);

// Points of X_at_level lying over the clopen.
std::vector<std::uint32_t> points_over(const ChainModel& m, const Clopen& a,
                                       std::size_t at_level);

std::string format_clopen(const Clopen& a);
Clopen parse_clopen(std::string_view text);

}  // namespace cantor

#endif

#ifndef CANTOR_REGULARITY_HPP
#define CANTOR_REGULARITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/model.hpp"
#include "cantor/scan.hpp"

namespace cantor {

// A single cylinder: one cell at a stated level.
struct CylinderRef {
  std::size_t level = 0;
  std::uint32_t cell = 0;
  bool operator==(const CylinderRef&) const = default;
};

std::string format_cylinder(const CylinderRef& c);
CylinderRef parse_cylinder(std::string_view text);

// w acts as the identity on the cylinder at every level from the cell's own
// level down to the model's full depth.
bool trivial_on_cylinder(const ChainModel& m, const Word& w, const CylinderRef& c);

// w acts as the identity on every point over U at the given level, and at
// every level between U's resolution and it.
bool trivial_on_clopen(const ChainModel& m, const Word& w, const Clopen& u, std::size_t depth);

// Some point over U at the given level moves under w.
bool moves_point_over(const ChainModel& m, const Word& w, const Clopen& u, std::size_t level);

struct AdaptedReport {
  Clopen set;
  std::size_t word_bound = 0;
  bool adapted = true;  // up to the bound
  std::optional<Word> violation;   // w with wU and U overlapping but unequal
  std::size_t translate_count = 0;  // distinct translates seen, including U
};

// Checks all reduced words of length <= L against the translate test of an
// adapted set.  The report also carries the observed index at truncation.
AdaptedReport is_adapted(const ChainModel& m, const Clopen& u, const SearchLimits& limits);
bool verify_adapted_violation(const ChainModel& m, const Clopen& u, const Word& w);

// Union of the level cells fixed by the image of w; shrinks as the level
// grows (over-approximation of the fixed-point set).
Clopen fixed_cylinder_set(const ChainModel& m, const Word& w, std::size_t level);

struct FreenessResult {
  bool violated = false;
  std::optional<Word> word;
  std::optional<CylinderRef> cylinder;
  std::size_t word_bound = 0;
  std::size_t depth = 0;
};

// Looks for a word with nontrivial image at depth D that is nonetheless
// trivial on some cylinder of level <= D all the way down the model.
// Candidate cylinders are scanned shallow-first, words in canonical order
// within each cylinder.
FreenessResult topological_freeness_check(const ChainModel& m, const SearchLimits& limits);
bool verify_freeness_witness(const ChainModel& m, const Word& w, const CylinderRef& c,
                             std::size_t depth);

struct LqaWitness {
  Word word;
  CylinderRef inner;
  Clopen outer;
  std::size_t depth = 0;
};

struct LqaResult {
  bool violated = false;
  std::optional<LqaWitness> witness;
  bool outer_adapted = true;  // warning flag, not a failure
  std::size_t word_bound = 0;
  std::size_t depth = 0;
};

// Looks for a word trivial on an inner cylinder V contained in U but acting
// nontrivially on U at the model's full depth.  D bounds the resolution of
// the candidate inner cylinders.
LqaResult lqa_violation_search(const ChainModel& m, const Clopen& outer,
                               const SearchLimits& limits);
bool verify_lqa_witness(const ChainModel& m, const LqaWitness& w);

struct NormalityWitness {
  Word conjugator;   // u, a stabilizer word of U
  Word kernel_word;  // w, trivial on V up to depth D
};

struct NormalityResult {
  bool violated = false;
  std::optional<NormalityWitness> witness;
  bool inner_adapted = true;
  bool outer_adapted = true;
  std::size_t word_bound = 0;
  std::size_t depth = 0;
};

// Conjugates every depth-D kernel word of V by every stabilizer word of U
// and reports the first conjugate that leaves the kernel.
NormalityResult kernel_normality_check(const ChainModel& m, const Clopen& inner,
                                       const Clopen& outer, const SearchLimits& limits);
bool verify_normality_witness(const ChainModel& m, const Clopen& inner, const Clopen& outer,
                              const NormalityWitness& w, std::size_t depth);

struct ChainProbeStep {
  std::size_t depth = 0;           // cylinder level l_i
  std::size_t element_count = 0;   // deduplicated words trivial on the cylinder
  bool strict_increase = false;    // relative to the previous step
  std::optional<Word> separating_word;
};

struct ChainProbeReport {
  std::vector<ChainProbeStep> steps;
  bool any_strict_increase = false;
};

// H_i = words of length <= L trivial on the basepoint cylinder of x at depth
// l_i, at every model level.  Nested cylinders give an ascending chain; each
// strict inclusion is flagged with a separating word.
ChainProbeReport ascending_chain_probe(const ChainModel& m, const PathPoint& x,
                                       const std::vector<std::size_t>& depths,
                                       const SearchLimits& limits);

struct GermWitness {
  Word word;
  // per level l = 1..max_level-2: a cylinder inside U_l(x) on which the word
  // is trivial down the model
  std::vector<CylinderRef> trivial_cells;
};

struct GermResult {
  bool found = false;
  std::optional<GermWitness> witness;
  std::size_t word_bound = 0;
};

// Finite shadow of a non-Hausdorff germ at x: a word fixing the whole
// coordinate path of x, nontrivial at full depth, which near every
// neighborhood cylinder of x is trivial on some sub-cylinder while moving
// points of the neighborhood.
GermResult germ_hausdorff_witness(const ChainModel& m, const PathPoint& x,
                                  const SearchLimits& limits);
bool verify_germ_witness(const ChainModel& m, const PathPoint& x, const GermWitness& w);

}  // namespace cantor

#endif

#ifndef CANTOR_FULLGROUP_HPP
#define CANTOR_FULLGROUP_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/model.hpp"
#include "cantor/regularity.hpp"
#include "cantor/scan.hpp"

namespace cantor {

// A topological-full-group element at truncation: a finite table of
// (clopen piece, group word) pairs over a common resolution.
struct Piece {
  Clopen domain;
  Word word;
};

class PiecewiseElement {
 public:
  PiecewiseElement(std::size_t resolution, std::vector<Piece> pieces);

  static PiecewiseElement whole_space(const ChainModel& m, std::size_t resolution, Word w);
  static PiecewiseElement identity(const ChainModel& m, std::size_t resolution);

  std::size_t resolution() const { return resolution_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  // word attached to the piece containing the cell; throws if uncovered
  const Word& word_at(std::uint32_t cell) const;

 private:
  std::size_t resolution_;
  std::vector<Piece> pieces_;
};

struct PiecewiseCheck {
  bool valid = false;
  std::string detail;  // names offending cells on failure
};

// Partition of the domain pieces plus bijectivity of the induced cell map
// at the given depth.
PiecewiseCheck validate_piecewise(const ChainModel& m, const PiecewiseElement& pe,
                                  std::size_t depth);

std::uint32_t apply_piecewise(const ChainModel& m, const PiecewiseElement& pe,
                              std::size_t level, std::uint32_t point);

// f after g; the result is canonical (pieces merged by word).
PiecewiseElement compose_piecewise(const ChainModel& m, const PiecewiseElement& f,
                                   const PiecewiseElement& g);
PiecewiseElement invert_piecewise(const ChainModel& m, const PiecewiseElement& pe);

// Merge pieces sharing a reduced word; pieces ordered by least cell.
PiecewiseElement canonicalize_piecewise(const ChainModel& m, const PiecewiseElement& pe);
bool piecewise_equal(const ChainModel& m, const PiecewiseElement& a, const PiecewiseElement& b);

// A compatible family of level permutations, e.g. another model's generator.
struct LevelFamily {
  std::vector<Permutation> by_level;  // levels 0..depth
  std::size_t depth() const { return by_level.size() - 1; }
};

LevelFamily generator_family(const ChainModel& m, std::size_t symbol, std::size_t depth);
LevelFamily word_family(const ChainModel& m, const Word& w, std::size_t depth);

struct ExpressResult {
  bool found = false;
  std::optional<PiecewiseElement> element;
  std::optional<CylinderRef> uncovered;  // first cell with no matching word
};

// Greedy cover of the space by cylinders carrying words that agree with the
// family down to depth D.  Tries resolution 0 first, then refines; sibling
// cells sharing a word are coarsened into one piece.
ExpressResult express_in_full_group(const ChainModel& target, const LevelFamily& f,
                                    const SearchLimits& limits);

struct GeneratorTable {
  std::string generator;
  PiecewiseElement element;
};

struct CoeCertificate {
  std::vector<GeneratorTable> forward;   // generators of model 1 over model 2
  std::vector<GeneratorTable> backward;  // generators of model 2 over model 1
  std::size_t word_bound = 0;
  std::size_t depth = 0;
};

struct CoeResult {
  bool certified = false;
  std::optional<CoeCertificate> certificate;
  std::string failure;  // names the failing generator and direction
};

bool models_share_tree(const ChainModel& m1, const ChainModel& m2);

// Both actions generate the same full group at truncation: every generator
// of each model is expressed piecewise over the other.
CoeResult coe_check(const ChainModel& m1, const ChainModel& m2, const SearchLimits& limits);
bool verify_coe_certificate(const ChainModel& m1, const ChainModel& m2,
                            const CoeCertificate& cert);

struct TwistEntry {
  Word from;  // a generating word of the stabilizer of the domain
  Word to;    // its image under the twisting map
};

// New model with one extra generator per entry, acting by the entry's image
// word inside the domain and as the identity outside.
ChainModel twist_action(const ChainModel& m, const Clopen& domain,
                        const std::vector<TwistEntry>& twists, const SearchLimits& limits);

// Restriction of a stabilizer word to the points over U at depth D.
struct HolonomyRestriction {
  Word word;  // shortest representative in canonical order
  std::vector<std::pair<std::uint32_t, std::uint32_t>> mapping;
};

std::vector<HolonomyRestriction> restricted_holonomy(const ChainModel& m, const Clopen& u,
                                                     const SearchLimits& limits);

struct ReturnEquivCertificate {
  Clopen u1, u2;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cell_bijection;  // depth-D cells
  std::vector<std::pair<Word, Word>> matches;  // holonomy of m1 matched into m2
  std::size_t word_bound = 0;
  std::size_t depth = 0;
};

struct ReturnEquivResult {
  bool certified = false;
  std::optional<ReturnEquivCertificate> certificate;
  std::string failure;  // names the unmatched restriction
};

// h conjugates the truncated restricted holonomy of U1 onto that of U2.
// Passing an empty bijection means the identity matching.
ReturnEquivResult return_equivalence_check(
    const ChainModel& m1, const Clopen& u1, const ChainModel& m2, const Clopen& u2,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& cell_bijection,
    const SearchLimits& limits);
bool verify_return_certificate(const ChainModel& m1, const ChainModel& m2,
                               const ReturnEquivCertificate& cert);

}  // namespace cantor

#endif

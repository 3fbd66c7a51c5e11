#ifndef CANTOR_TEXTIO_HPP
#define CANTOR_TEXTIO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "cantor/fullgroup.hpp"
#include "cantor/model.hpp"
#include "cantor/regularity.hpp"

namespace cantor {

// Line-oriented text form shared by all reports, witnesses and
// certificates: one record per line, fields tab-separated, words rendered
// with ^-1 suffixes for inverses.

struct TextRecord {
  std::vector<std::string> fields;
};

struct TextArtifact {
  std::vector<TextRecord> records;
  std::string to_text() const;
  static TextArtifact from_text(const std::string& text);
  // first record with the given head, or null
  const TextRecord* find(const std::string& head) const;
  std::vector<const TextRecord*> find_all(const std::string& head) const;
};

TextArtifact serialize_validation(const ChainModel& m, const ValidationReport& report);
TextArtifact serialize_adapted(const ChainModel& m, const AdaptedReport& report);
TextArtifact serialize_freeness(const ChainModel& m, const FreenessResult& result);
TextArtifact serialize_lqa(const ChainModel& m, const LqaResult& result);
TextArtifact serialize_normality(const ChainModel& m, const Clopen& inner, const Clopen& outer,
                                 const NormalityResult& result);
TextArtifact serialize_chain_probe(const ChainModel& m, const PathPoint& x,
                                   const ChainProbeReport& report, std::size_t word_bound);
TextArtifact serialize_germ(const ChainModel& m, const PathPoint& x, const GermResult& result);
TextArtifact serialize_coe(const ChainModel& m1, const ChainModel& m2, const CoeResult& result);
TextArtifact serialize_return_equiv(const ChainModel& m1, const ChainModel& m2,
                                    const ReturnEquivResult& result);

// Re-check a serialized artifact against its models using only model
// primitives.  Returns an explanation on failure.
struct VerifyOutcome {
  bool accepted = false;
  std::string detail;
};

VerifyOutcome verify_artifact(const TextArtifact& artifact, const ChainModel& m1,
                              const ChainModel* m2);

}  // namespace cantor

#endif

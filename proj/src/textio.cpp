#include "cantor/textio.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <sstream>

namespace cantor {

namespace {

std::string join_fields(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += '\t';
    out += fields[i];
  }
  return out;
}

std::size_t parse_size(const std::string& s, const char* what) {
  std::size_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InvalidInput(std::string("bad ") + what + " value '" + s + "'");
  return v;
}

// positional key lookup inside one record: ... key value ...
std::string record_value(const TextRecord& r, const std::string& key) {
  for (std::size_t i = 0; i + 1 < r.fields.size(); ++i)
    if (r.fields[i] == key) return r.fields[i + 1];
  throw InvalidInput("record missing field '" + key + "'");
}

bool record_has(const TextRecord& r, const std::string& key) {
  for (std::size_t i = 0; i + 1 < r.fields.size(); ++i)
    if (r.fields[i] == key) return true;
  return false;
}

void put_bounds(TextArtifact& a, std::size_t word_bound, std::optional<std::size_t> depth) {
  TextRecord r;
  r.fields = {"bounds", "L", std::to_string(word_bound)};
  if (depth) {
    r.fields.push_back("D");
    r.fields.push_back(std::to_string(*depth));
  }
  a.records.push_back(std::move(r));
}

SearchLimits bounds_from(const TextArtifact& a) {
  const TextRecord* r = a.find("bounds");
  if (!r) throw InvalidInput("artifact has no bounds record");
  SearchLimits limits;
  limits.word_bound = parse_size(record_value(*r, "L"), "L");
  if (record_has(*r, "D")) limits.depth = parse_size(record_value(*r, "D"), "D");
  return limits;
}

std::string format_path(const PathPoint& x) {
  std::string out;
  for (std::size_t i = 1; i < x.coords.size(); ++i) {
    if (i > 1) out += ',';
    out += std::to_string(x.coords[i]);
  }
  return out.empty() ? "-" : out;
}

PathPoint parse_path(const ChainModel& m, const std::string& text) {
  std::vector<std::uint32_t> coords{0};
  if (text != "-") {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto comma = text.find(',', pos);
      auto tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
      coords.push_back(static_cast<std::uint32_t>(parse_size(tok, "path coordinate")));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return make_path_point(m, coords);
}

}  // namespace

std::string TextArtifact::to_text() const {
  std::string out;
  for (const auto& r : records) {
    out += join_fields(r.fields);
    out += '\n';
  }
  return out;
}

TextArtifact TextArtifact::from_text(const std::string& text) {
  TextArtifact a;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TextRecord r;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      auto tab = line.find('\t', pos);
      r.fields.push_back(line.substr(pos, tab == std::string::npos ? tab : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    a.records.push_back(std::move(r));
  }
  return a;
}

const TextRecord* TextArtifact::find(const std::string& head) const {
  for (const auto& r : records)
    if (!r.fields.empty() && r.fields[0] == head) return &r;
  return nullptr;
}

std::vector<const TextRecord*> TextArtifact::find_all(const std::string& head) const {
  std::vector<const TextRecord*> out;
  for (const auto& r : records)
    if (!r.fields.empty() && r.fields[0] == head) out.push_back(&r);
  return out;
}

TextArtifact serialize_validation(const ChainModel& m, const ValidationReport& report) {
  TextArtifact a;
  a.records.push_back({{"artifact", "validate"}});
  a.records.push_back({{"model", m.name()}});
  for (const auto& l : report.levels) {
    TextRecord r;
    r.fields = {"level",
                std::to_string(l.level),
                "transitive",
                l.transitive ? "pass" : "fail",
                "equivariant",
                l.equivariant ? "pass" : "fail",
                "basepoint",
                l.basepoint_compatible ? "pass" : "fail",
                "fibers",
                l.fibers_uniform ? "pass" : "fail"};
    if (l.equivariance_witness) {
      r.fields.push_back("offender");
      r.fields.push_back(m.alphabet().symbol(l.equivariance_witness->first) + "@" +
                         std::to_string(l.equivariance_witness->second));
    }
    a.records.push_back(std::move(r));
  }
  a.records.push_back({{"verdict", report.valid() ? "valid" : "invalid"}});
  return a;
}

TextArtifact serialize_adapted(const ChainModel& m, const AdaptedReport& report) {
  TextArtifact a;
  a.records.push_back({{"artifact", "adapted"}});
  a.records.push_back({{"model", m.name()}});
  put_bounds(a, report.word_bound, std::nullopt);
  a.records.push_back({{"set", format_clopen(report.set)}});
  a.records.push_back({{"translates", std::to_string(report.translate_count)}});
  if (report.adapted) {
    a.records.push_back({{"verdict", "adapted-up-to-bounds"}});
  } else {
    a.records.push_back({{"verdict", "violated"}});
    a.records.push_back({{"witness", "word", format_word(m.alphabet(), *report.violation)}});
  }
  return a;
}

TextArtifact serialize_freeness(const ChainModel& m, const FreenessResult& result) {
  TextArtifact a;
  a.records.push_back({{"artifact", "freeness"}});
  a.records.push_back({{"model", m.name()}});
  put_bounds(a, result.word_bound, result.depth);
  if (result.violated) {
    a.records.push_back({{"verdict", "violated"}});
    a.records.push_back({{"witness", "word", format_word(m.alphabet(), *result.word), "cell",
                          format_cylinder(*result.cylinder)}});
  } else {
    a.records.push_back({{"verdict", "free-up-to-bounds"}});
  }
  return a;
}

TextArtifact serialize_lqa(const ChainModel& m, const LqaResult& result) {
  TextArtifact a;
  a.records.push_back({{"artifact", "lqa"}});
  a.records.push_back({{"model", m.name()}});
  put_bounds(a, result.word_bound, result.depth);
  if (!result.outer_adapted)
    a.records.push_back({{"warning", "outer-clopen-not-adapted-up-to-bounds"}});
  if (result.violated) {
    const auto& w = *result.witness;
    a.records.push_back({{"outer", format_clopen(w.outer)}});
    a.records.push_back({{"verdict", "violated"}});
    a.records.push_back({{"witness", "word", format_word(m.alphabet(), w.word), "inner",
                          format_cylinder(w.inner)}});
  } else {
    a.records.push_back({{"verdict", "lqa-up-to-bounds"}});
  }
  return a;
}

TextArtifact serialize_normality(const ChainModel& m, const Clopen& inner, const Clopen& outer,
                                 const NormalityResult& result) {
  TextArtifact a;
  a.records.push_back({{"artifact", "normality"}});
  a.records.push_back({{"model", m.name()}});
  put_bounds(a, result.word_bound, result.depth);
  a.records.push_back({{"inner", format_clopen(inner)}});
  a.records.push_back({{"outer", format_clopen(outer)}});
  if (!result.inner_adapted) a.records.push_back({{"warning", "inner-clopen-not-adapted"}});
  if (!result.outer_adapted) a.records.push_back({{"warning", "outer-clopen-not-adapted"}});
  if (result.violated) {
    a.records.push_back({{"verdict", "violated"}});
    a.records.push_back(
        {{"witness", "conjugator", format_word(m.alphabet(), result.witness->conjugator),
          "kernel", format_word(m.alphabet(), result.witness->kernel_word)}});
  } else {
    a.records.push_back({{"verdict", "normal-up-to-bounds"}});
  }
  return a;
}

TextArtifact serialize_chain_probe(const ChainModel& m, const PathPoint& x,
                                   const ChainProbeReport& report,
                                   std::size_t word_bound) {
  TextArtifact a;
  a.records.push_back({{"artifact", "chain-probe"}});
  a.records.push_back({{"model", m.name()}});
  put_bounds(a, word_bound, std::nullopt);
  a.records.push_back({{"point", format_path(x)}});
  for (const auto& step : report.steps) {
    TextRecord r;
    r.fields = {"step", "depth", std::to_string(step.depth), "elements",
                std::to_string(step.element_count)};
    if (step.strict_increase) {
      r.fields.push_back("separating");
      r.fields.push_back(format_word(m.alphabet(), *step.separating_word));
    }
    a.records.push_back(std::move(r));
  }
  a.records.push_back(
      {{"verdict", report.any_strict_increase ? "strict-increase" : "stable-up-to-bounds"}});
  return a;
}

TextArtifact serialize_germ(const ChainModel& m, const PathPoint& x, const GermResult& result) {
  TextArtifact a;
  a.records.push_back({{"artifact", "germ"}});
  a.records.push_back({{"model", m.name()}});
  put_bounds(a, result.word_bound, std::nullopt);
  a.records.push_back({{"point", format_path(x)}});
  if (result.found) {
    a.records.push_back({{"verdict", "witness"}});
    TextRecord r;
    r.fields = {"witness", "word", format_word(m.alphabet(), result.witness->word)};
    for (const auto& c : result.witness->trivial_cells) {
      r.fields.push_back("cell");
      r.fields.push_back(format_cylinder(c));
    }
    a.records.push_back(std::move(r));
  } else {
    a.records.push_back({{"verdict", "none-up-to-bounds"}});
  }
  return a;
}

namespace {

void put_tables(TextArtifact& a, const ChainModel& target, const char* direction,
                const std::vector<GeneratorTable>& tables) {
  for (const auto& t : tables) {
    a.records.push_back({{"table", direction, t.generator, "pieces",
                          std::to_string(t.element.pieces().size()), "resolution",
                          std::to_string(t.element.resolution())}});
    for (std::size_t i = 0; i < t.element.pieces().size(); ++i) {
      const auto& p = t.element.pieces()[i];
      a.records.push_back({{"piece", direction, t.generator, std::to_string(i),
                            format_clopen(p.domain), format_word(target.alphabet(), p.word)}});
    }
  }
}

}  // namespace

TextArtifact serialize_coe(const ChainModel& m1, const ChainModel& m2, const CoeResult& result) {
  TextArtifact a;
  a.records.push_back({{"artifact", "coe"}});
  a.records.push_back({{"model", m1.name()}});
  a.records.push_back({{"model2", m2.name()}});
  if (result.certified) {
    const auto& cert = *result.certificate;
    put_bounds(a, cert.word_bound, cert.depth);
    a.records.push_back({{"verdict", "certified"}});
    a.records.push_back({{"note", "holonomy-tables-claim-equality-up-to-bounds-only"}});
    put_tables(a, m2, "forward", cert.forward);
    put_tables(a, m1, "backward", cert.backward);
  } else {
    a.records.push_back({{"verdict", "not-found-within-bounds"}});
    a.records.push_back({{"failure", result.failure}});
  }
  return a;
}

TextArtifact serialize_return_equiv(const ChainModel& m1, const ChainModel& m2,
                                    const ReturnEquivResult& result) {
  TextArtifact a;
  a.records.push_back({{"artifact", "return-equiv"}});
  a.records.push_back({{"model", m1.name()}});
  a.records.push_back({{"model2", m2.name()}});
  if (result.certified) {
    const auto& cert = *result.certificate;
    put_bounds(a, cert.word_bound, cert.depth);
    a.records.push_back({{"U1", format_clopen(cert.u1)}});
    a.records.push_back({{"U2", format_clopen(cert.u2)}});
    TextRecord h;
    h.fields = {"bijection"};
    for (const auto& [x, y] : cert.cell_bijection)
      h.fields.push_back(std::to_string(x) + ">" + std::to_string(y));
    a.records.push_back(std::move(h));
    a.records.push_back({{"verdict", "certified"}});
    a.records.push_back({{"note", "holonomy-matching-claims-equality-up-to-bounds-only"}});
    for (const auto& [w1, w2] : cert.matches)
      a.records.push_back({{"match", format_word(m1.alphabet(), w1),
                            format_word(m2.alphabet(), w2)}});
  } else {
    a.records.push_back({{"verdict", "failed"}});
    a.records.push_back({{"failure", result.failure}});
  }
  return a;
}

namespace {

VerifyOutcome accept(bool ok, const std::string& why) {
  return ok ? VerifyOutcome{true, "accepted"} : VerifyOutcome{false, why};
}

VerifyOutcome verify_freeness(const TextArtifact& a, const ChainModel& m) {
  auto limits = bounds_from(a);
  const TextRecord* verdict = a.find("verdict");
  if (!verdict) return {false, "missing verdict"};
  if (verdict->fields.at(1) == "violated") {
    const TextRecord* w = a.find("witness");
    if (!w) return {false, "missing witness"};
    Word word = parse_word(m.alphabet(), record_value(*w, "word"));
    CylinderRef cell = parse_cylinder(record_value(*w, "cell"));
    return accept(verify_freeness_witness(m, word, cell, limits.depth),
                  "freeness witness does not replay");
  }
  auto rerun = topological_freeness_check(m, limits);
  return accept(!rerun.violated, "a violation exists within the recorded bounds");
}

VerifyOutcome verify_lqa(const TextArtifact& a, const ChainModel& m) {
  auto limits = bounds_from(a);
  const TextRecord* verdict = a.find("verdict");
  if (!verdict) return {false, "missing verdict"};
  if (verdict->fields.at(1) == "violated") {
    const TextRecord* w = a.find("witness");
    const TextRecord* outer = a.find("outer");
    if (!w || !outer) return {false, "missing witness records"};
    LqaWitness witness{parse_word(m.alphabet(), record_value(*w, "word")),
                       parse_cylinder(record_value(*w, "inner")),
                       parse_clopen(outer->fields.at(1)), limits.depth};
    return accept(verify_lqa_witness(m, witness), "lqa witness does not replay");
  }
  return {true, "accepted"};  // up-to-bounds verdict carries no claim to replay
}

VerifyOutcome verify_normality(const TextArtifact& a, const ChainModel& m) {
  auto limits = bounds_from(a);
  Clopen inner = parse_clopen(a.find("inner")->fields.at(1));
  Clopen outer = parse_clopen(a.find("outer")->fields.at(1));
  const TextRecord* verdict = a.find("verdict");
  if (!verdict) return {false, "missing verdict"};
  if (verdict->fields.at(1) == "violated") {
    const TextRecord* w = a.find("witness");
    if (!w) return {false, "missing witness"};
    NormalityWitness witness{parse_word(m.alphabet(), record_value(*w, "conjugator")),
                             parse_word(m.alphabet(), record_value(*w, "kernel"))};
    return accept(verify_normality_witness(m, inner, outer, witness, limits.depth),
                  "normality witness does not replay");
  }
  return {true, "accepted"};
}

VerifyOutcome verify_chain_probe(const TextArtifact& a, const ChainModel& m) {
  PathPoint x = parse_path(m, a.find("point")->fields.at(1));
  for (const auto* step : a.find_all("step")) {
    if (!record_has(*step, "separating")) continue;
    std::size_t depth = parse_size(record_value(*step, "depth"), "depth");
    Word w = parse_word(m.alphabet(), record_value(*step, "separating"));
    if (!trivial_on_cylinder(m, w, CylinderRef{depth, x.coords[depth]}))
      return {false, "separating word is not trivial on its cylinder"};
  }
  return {true, "accepted"};
}

VerifyOutcome verify_germ(const TextArtifact& a, const ChainModel& m) {
  PathPoint x = parse_path(m, a.find("point")->fields.at(1));
  const TextRecord* verdict = a.find("verdict");
  if (!verdict) return {false, "missing verdict"};
  if (verdict->fields.at(1) != "witness") return {true, "accepted"};
  const TextRecord* w = a.find("witness");
  if (!w) return {false, "missing witness"};
  GermWitness witness;
  witness.word = parse_word(m.alphabet(), record_value(*w, "word"));
  for (std::size_t i = 0; i + 1 < w->fields.size(); ++i)
    if (w->fields[i] == "cell") witness.trivial_cells.push_back(parse_cylinder(w->fields[i + 1]));
  return accept(verify_germ_witness(m, x, witness), "germ witness does not replay");
}

VerifyOutcome verify_coe(const TextArtifact& a, const ChainModel& m1, const ChainModel* m2) {
  if (!m2) return {false, "coe artifact needs a second model"};
  const TextRecord* verdict = a.find("verdict");
  if (!verdict) return {false, "missing verdict"};
  if (verdict->fields.at(1) != "certified") return {true, "accepted"};
  auto limits = bounds_from(a);
  CoeCertificate cert;
  cert.word_bound = limits.word_bound;
  cert.depth = limits.depth;
  std::map<std::pair<std::string, std::string>, std::vector<Piece>> pieces;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto* p : a.find_all("piece")) {
    const std::string& direction = p->fields.at(1);
    const std::string& gen = p->fields.at(2);
    const ChainModel& target = direction == "forward" ? *m2 : m1;
    auto key = std::make_pair(direction, gen);
    if (!pieces.count(key)) order.push_back(key);
    pieces[key].push_back(
        {parse_clopen(p->fields.at(4)), parse_word(target.alphabet(), p->fields.at(5))});
  }
  for (const auto& key : order) {
    auto& vec = pieces[key];
    std::size_t res = vec.front().domain.level();
    GeneratorTable table{key.second, PiecewiseElement(res, std::move(vec))};
    (key.first == "forward" ? cert.forward : cert.backward).push_back(std::move(table));
  }
  return accept(verify_coe_certificate(m1, *m2, cert), "coe certificate does not replay");
}

VerifyOutcome verify_return(const TextArtifact& a, const ChainModel& m1,
                            const ChainModel* m2_opt) {
  const ChainModel* m2 = m2_opt ? m2_opt : &m1;  // same-model checks are fine
  const TextRecord* verdict = a.find("verdict");
  if (!verdict) return {false, "missing verdict"};
  if (verdict->fields.at(1) != "certified") return {true, "accepted"};
  auto limits = bounds_from(a);
  ReturnEquivCertificate cert;
  cert.word_bound = limits.word_bound;
  cert.depth = limits.depth;
  cert.u1 = parse_clopen(a.find("U1")->fields.at(1));
  cert.u2 = parse_clopen(a.find("U2")->fields.at(1));
  const TextRecord* h = a.find("bijection");
  for (std::size_t i = 1; h && i < h->fields.size(); ++i) {
    auto sep = h->fields[i].find('>');
    if (sep == std::string::npos) return {false, "bad bijection entry"};
    cert.cell_bijection.push_back(
        {static_cast<std::uint32_t>(parse_size(h->fields[i].substr(0, sep), "cell")),
         static_cast<std::uint32_t>(parse_size(h->fields[i].substr(sep + 1), "cell"))});
  }
  for (const auto* match : a.find_all("match"))
    cert.matches.push_back({parse_word(m1.alphabet(), match->fields.at(1)),
                            parse_word(m2->alphabet(), match->fields.at(2))});
  return accept(verify_return_certificate(m1, *m2, cert),
                "return-equivalence certificate does not replay");
}

VerifyOutcome verify_adapted_artifact(const TextArtifact& a, const ChainModel& m) {
  const TextRecord* verdict = a.find("verdict");
  if (!verdict) return {false, "missing verdict"};
  Clopen u = parse_clopen(a.find("set")->fields.at(1));
  if (verdict->fields.at(1) == "violated") {
    Word w = parse_word(m.alphabet(), record_value(*a.find("witness"), "word"));
    return accept(verify_adapted_violation(m, u, w), "adapted-set violation does not replay");
  }
  return {true, "accepted"};
}

VerifyOutcome verify_validation(const TextArtifact& a, const ChainModel& m) {
  const TextRecord* verdict = a.find("verdict");
  if (!verdict) return {false, "missing verdict"};
  bool valid = validate_chain(m).valid();
  return accept((verdict->fields.at(1) == "valid") == valid,
                "validation verdict does not match the model");
}

}  // namespace

VerifyOutcome verify_artifact(const TextArtifact& artifact, const ChainModel& m1,
                              const ChainModel* m2) {
  const TextRecord* head = artifact.find("artifact");
  if (!head || head->fields.size() < 2) return {false, "not an artifact file"};
  const std::string& kind = head->fields[1];
  try {
    if (kind == "freeness") return verify_freeness(artifact, m1);
    if (kind == "lqa") return verify_lqa(artifact, m1);
    if (kind == "normality") return verify_normality(artifact, m1);
    if (kind == "chain-probe") return verify_chain_probe(artifact, m1);
    if (kind == "germ") return verify_germ(artifact, m1);
    if (kind == "coe") return verify_coe(artifact, m1, m2);
    if (kind == "return-equiv") return verify_return(artifact, m1, m2);
    if (kind == "adapted") return verify_adapted_artifact(artifact, m1);
    if (kind == "validate") return verify_validation(artifact, m1);
  } catch (const std::exception& e) {
    return {false, std::string("verification error: ") + e.what()};
  }
  return {false, "unknown artifact kind '" + kind + "'"};
}

}  // namespace cantor

#include "cantor/runner.hpp"

#include <sstream>

#include "cantor/dot.hpp"
#include "cantor/fullgroup.hpp"
#include "cantor/regularity.hpp"
#include "cantor/textio.hpp"

namespace cantor {

namespace {

std::string bounds_line(const SearchLimits& limits, bool with_depth) {
  std::string out = "L=" + std::to_string(limits.word_bound);
  if (with_depth) out += ", D=" + std::to_string(limits.depth);
  return out;
}

struct Reporter {
  std::ostringstream out;
  void line(const std::string& s) { out << s << "\n"; }
};

RunOutcome run_validate(const ChainModel& m) {
  auto report = validate_chain(m);
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m.name());
  r.line("check: validate");
  for (const auto& l : report.levels) {
    std::string s = "level " + std::to_string(l.level) + ": transitive=" +
                    (l.transitive ? "pass" : "fail") +
                    " equivariant=" + (l.equivariant ? "pass" : "fail") +
                    " basepoint=" + (l.basepoint_compatible ? "pass" : "fail") +
                    " fibers=" + (l.fibers_uniform ? "pass" : "fail");
    if (l.equivariance_witness)
      s += " offender=" + m.alphabet().symbol(l.equivariance_witness->first) + "@" +
           std::to_string(l.equivariance_witness->second);
    r.line(s);
  }
  r.line(std::string("verdict: ") + (report.valid() ? "valid" : "invalid"));
  outcome.exit_code = report.valid() ? kExitPassed : kExitViolated;
  outcome.report = r.out.str();
  outcome.artifact_name = "validate.report";
  outcome.artifact_text = serialize_validation(m, report).to_text();
  return outcome;
}

RunOutcome run_report(const ChainModel& m) {
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m.name());
  r.line("check: report");
  std::string gens;
  for (std::size_t g = 0; g < m.alphabet().size(); ++g)
    gens += (g ? "," : "") + m.alphabet().symbol(g);
  r.line("generators: " + gens);
  r.line("levels: " + std::to_string(m.max_level()));
  for (std::size_t l = 0; l <= m.max_level(); ++l)
    r.line("level " + std::to_string(l) + ": points=" + std::to_string(m.points(l)) +
           " basepoint=" + std::to_string(m.basepoint(l)));
  r.line(std::string("chain-valid: ") + (validate_chain(m).valid() ? "yes" : "no"));
  outcome.report = r.out.str();
  return outcome;
}

RunOutcome run_freeness(const ChainModel& m, const SearchLimits& limits) {
  auto result = topological_freeness_check(m, limits);
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m.name());
  r.line("check: freeness " + bounds_line(limits, true));
  if (result.violated) {
    r.line("verdict: violated");
    r.line("witness: word=" + format_word(m.alphabet(), *result.word) +
           " cell=" + format_cylinder(*result.cylinder));
    outcome.exit_code = kExitViolated;
  } else {
    r.line("verdict: free-up-to-bounds(" + bounds_line(limits, true) + ")");
  }
  outcome.report = r.out.str();
  outcome.artifact_name = "freeness.witness";
  outcome.artifact_text = serialize_freeness(m, result).to_text();
  return outcome;
}

RunOutcome run_lqa(const ChainModel& m, const Clopen& outer, const SearchLimits& limits) {
  auto result = lqa_violation_search(m, outer, limits);
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m.name());
  r.line("check: lqa " + bounds_line(limits, true) + " U=" + format_clopen(outer));
  if (!result.outer_adapted) r.line("warning: outer clopen is not adapted up to the bound");
  if (result.violated) {
    r.line("verdict: violated");
    r.line("witness: word=" + format_word(m.alphabet(), result.witness->word) +
           " inner=" + format_cylinder(result.witness->inner));
    outcome.exit_code = kExitViolated;
  } else {
    r.line("verdict: lqa-up-to-bounds(" + bounds_line(limits, true) + ")");
  }
  outcome.report = r.out.str();
  outcome.artifact_name = "lqa.witness";
  outcome.artifact_text = serialize_lqa(m, result).to_text();
  return outcome;
}

RunOutcome run_normality(const ChainModel& m, const Clopen& inner, const Clopen& outer,
                         const SearchLimits& limits) {
  auto result = kernel_normality_check(m, inner, outer, limits);
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m.name());
  r.line("check: normality " + bounds_line(limits, true) + " V=" + format_clopen(inner) +
         " U=" + format_clopen(outer));
  if (!result.inner_adapted) r.line("warning: inner clopen is not adapted up to the bound");
  if (!result.outer_adapted) r.line("warning: outer clopen is not adapted up to the bound");
  if (result.violated) {
    r.line("verdict: violated");
    r.line("witness: conjugator=" + format_word(m.alphabet(), result.witness->conjugator) +
           " kernel=" + format_word(m.alphabet(), result.witness->kernel_word));
    outcome.exit_code = kExitViolated;
  } else {
    r.line("verdict: normal-up-to-bounds(" + bounds_line(limits, true) + ")");
  }
  outcome.report = r.out.str();
  outcome.artifact_name = "normality.witness";
  outcome.artifact_text = serialize_normality(m, inner, outer, result).to_text();
  return outcome;
}

RunOutcome run_chain_probe(const ChainModel& m, const PathPoint& x,
                           const std::vector<std::size_t>& depths, const SearchLimits& limits) {
  auto report = ascending_chain_probe(m, x, depths, limits);
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m.name());
  r.line("check: chain-probe " + bounds_line(limits, false));
  for (const auto& step : report.steps) {
    std::string s = "depth " + std::to_string(step.depth) +
                    ": elements=" + std::to_string(step.element_count);
    if (step.strict_increase)
      s += " strict-increase separating=" + format_word(m.alphabet(), *step.separating_word);
    r.line(s);
  }
  r.line(std::string("verdict: ") +
         (report.any_strict_increase ? "strict-increase" : "stable-up-to-bounds"));
  outcome.report = r.out.str();
  outcome.artifact_name = "chain-probe.report";
  outcome.artifact_text = serialize_chain_probe(m, x, report, limits.word_bound).to_text();
  return outcome;
}

RunOutcome run_germ(const ChainModel& m, const PathPoint& x, const SearchLimits& limits) {
  auto result = germ_hausdorff_witness(m, x, limits);
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m.name());
  r.line("check: germ " + bounds_line(limits, false));
  if (result.found) {
    std::string cells;
    for (const auto& c : result.witness->trivial_cells) cells += " " + format_cylinder(c);
    r.line("verdict: witness");
    r.line("witness: word=" + format_word(m.alphabet(), result.witness->word) +
           " trivial-cells:" + cells);
    outcome.exit_code = kExitViolated;
  } else {
    r.line("verdict: none-up-to-bounds(" + bounds_line(limits, false) + ")");
  }
  outcome.report = r.out.str();
  outcome.artifact_name = "germ.witness";
  outcome.artifact_text = serialize_germ(m, x, result).to_text();
  return outcome;
}

RunOutcome run_coe(const ChainModel& m1, const ChainModel& m2, const SearchLimits& limits) {
  auto result = coe_check(m1, m2, limits);
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m1.name());
  r.line("model2: " + m2.name());
  r.line("check: coe " + bounds_line(limits, true));
  if (result.certified) {
    r.line("verdict: certified");
    for (const auto& t : result.certificate->forward)
      r.line("forward " + t.generator + ": pieces=" + std::to_string(t.element.pieces().size()));
    for (const auto& t : result.certificate->backward)
      r.line("backward " + t.generator + ": pieces=" + std::to_string(t.element.pieces().size()));
  } else {
    r.line("verdict: not-found-within-bounds");
    r.line("failure: " + result.failure);
    outcome.exit_code = kExitInconclusive;
  }
  outcome.report = r.out.str();
  outcome.artifact_name = "coe.certificate";
  outcome.artifact_text = serialize_coe(m1, m2, result).to_text();
  return outcome;
}

RunOutcome run_return_equiv(const ChainModel& m1, const Clopen& u1, const ChainModel& m2,
                            const Clopen& u2,
                            const std::vector<std::pair<std::uint32_t, std::uint32_t>>& h,
                            const SearchLimits& limits) {
  auto result = return_equivalence_check(m1, u1, m2, u2, h, limits);
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m1.name());
  r.line("model2: " + m2.name());
  r.line("check: return-equiv " + bounds_line(limits, true) + " U1=" + format_clopen(u1) +
         " U2=" + format_clopen(u2));
  if (result.certified) {
    r.line("verdict: certified");
    r.line("matches: " + std::to_string(result.certificate->matches.size()));
  } else {
    r.line("verdict: failed");
    r.line("failure: " + result.failure);
    outcome.exit_code = kExitViolated;
  }
  outcome.report = r.out.str();
  outcome.artifact_name = "return-equiv.certificate";
  outcome.artifact_text = serialize_return_equiv(m1, m2, result).to_text();
  return outcome;
}

RunOutcome run_twist(const ChainModel& m, const Clopen& domain,
                     const std::vector<std::pair<std::string, std::string>>& entries,
                     const SearchLimits& limits) {
  std::vector<TwistEntry> twists;
  for (const auto& [from, to] : entries)
    twists.push_back({parse_word(m.alphabet(), from), parse_word(m.alphabet(), to)});
  ChainModel twisted = twist_action(m, domain, twists, limits);
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m.name());
  r.line("check: twist U=" + format_clopen(domain));
  r.line("extended model: " + twisted.name() + " generators=" +
         std::to_string(twisted.alphabet().size()));
  r.line(std::string("chain-valid: ") + (validate_chain(twisted).valid() ? "yes" : "no"));
  r.line("verdict: certified");
  outcome.report = r.out.str();
  outcome.artifact_name = "twisted.cfg";
  outcome.artifact_text = explicit_model_config(twisted) + "\n[command]\nrun = validate\n";
  return outcome;
}

RunOutcome run_export_dot(const ChainModel& m, std::size_t depth) {
  RunOutcome outcome;
  Reporter r;
  r.line("model: " + m.name());
  r.line("check: export-dot depth=" + std::to_string(depth));
  r.line("verdict: written");
  outcome.report = r.out.str();
  outcome.artifact_name = "tree.dot";
  outcome.artifact_text = export_tree(m, depth);
  return outcome;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
  try {
    ChainModel model = build_model(cfg.model);
    std::optional<ChainModel> model2;
    if (cfg.model2) model2 = build_model(*cfg.model2);

    const auto& cmd = cfg.command;
    RunOutcome outcome;
    if (cmd.run == "validate") {
      outcome = run_validate(model);
    } else if (cmd.run == "report") {
      outcome = run_report(model);
    } else if (cmd.run == "freeness") {
      outcome = run_freeness(model, cfg.bounds);
    } else if (cmd.run == "lqa") {
      outcome = run_lqa(model, *cmd.set_u, cfg.bounds);
    } else if (cmd.run == "normality") {
      outcome = run_normality(model, *cmd.set_v, *cmd.set_u, cfg.bounds);
    } else if (cmd.run == "chain-probe") {
      std::vector<std::uint32_t> coords{0};
      coords.insert(coords.end(), cmd.point.begin(), cmd.point.end());
      outcome = run_chain_probe(model, make_path_point(model, coords), cmd.depths, cfg.bounds);
    } else if (cmd.run == "germ") {
      std::vector<std::uint32_t> coords{0};
      coords.insert(coords.end(), cmd.point.begin(), cmd.point.end());
      outcome = run_germ(model, make_path_point(model, coords), cfg.bounds);
    } else if (cmd.run == "coe") {
      outcome = run_coe(model, *model2, cfg.bounds);
    } else if (cmd.run == "return-equiv") {
      const ChainModel& second = model2 ? *model2 : model;
      outcome = run_return_equiv(model, *cmd.set_u1, second, *cmd.set_u2,
                                 cmd.h_identity ? std::vector<std::pair<std::uint32_t, std::uint32_t>>{}
                                                : cmd.h_pairs,
                                 cfg.bounds);
    } else if (cmd.run == "twist") {
      outcome = run_twist(model, *cmd.set_u, cmd.twist_entries, cfg.bounds);
    } else if (cmd.run == "export-dot") {
      outcome = run_export_dot(model, cmd.dot_depth);
    } else {
      return {kExitInputError, "error: unrecognized command\n", std::nullopt, std::nullopt};
    }
    if (cfg.artifact_name) outcome.artifact_name = cfg.artifact_name;
    return outcome;
  } catch (const std::exception& e) {
    return {kExitInputError, std::string("error: ") + e.what() + "\n", std::nullopt,
            std::nullopt};
  }
}

RunOutcome run_verify(const RunConfig& cfg, const std::string& artifact_text) {
  try {
    ChainModel model = build_model(cfg.model);
    std::optional<ChainModel> model2;
    if (cfg.model2) model2 = build_model(*cfg.model2);
    auto artifact = TextArtifact::from_text(artifact_text);
    auto outcome = verify_artifact(artifact, model, model2 ? &*model2 : nullptr);
    RunOutcome run_outcome;
    run_outcome.exit_code = outcome.accepted ? kExitPassed : kExitViolated;
    run_outcome.report = std::string("verify: ") + (outcome.accepted ? "accepted" : "rejected") +
                         "\ndetail: " + outcome.detail + "\n";
    return run_outcome;
  } catch (const std::exception& e) {
    return {kExitInputError, std::string("error: ") + e.what() + "\n", std::nullopt,
            std::nullopt};
  }
}

}  // namespace cantor

#include "cantor/regularity.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cantor {

std::string format_cylinder(const CylinderRef& c) {
  return std::to_string(c.level) + ":" + std::to_string(c.cell);
}

CylinderRef parse_cylinder(std::string_view text) {
  Clopen parsed = parse_clopen(text);
  if (parsed.cell_count() != 1) throw InvalidInput("cylinder must be a single cell");
  return CylinderRef{parsed.level(), parsed.cells()[0]};
}

bool trivial_on_cylinder(const ChainModel& m, const Word& w, const CylinderRef& c) {
  if (c.level > m.max_level() || c.cell >= m.points(c.level))
    throw InvalidInput("cylinder out of range");
  std::vector<std::uint32_t> pts{c.cell};
  for (std::size_t l = c.level;; ++l) {
    for (auto p : pts)
      if (m.apply_word(l, w, p) != p) return false;
    if (l == m.max_level()) break;
    std::vector<std::uint32_t> next;
    for (auto p : pts) {
      const auto& kids = m.fiber(l + 1, p);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    pts = std::move(next);
  }
  return true;
}

bool trivial_on_clopen(const ChainModel& m, const Word& w, const Clopen& u, std::size_t depth) {
  check_clopen(m, u);
  if (depth > m.max_level() || depth < u.level())
    throw InvalidInput("triviality depth must lie between the resolution and the model depth");
  std::vector<std::uint32_t> pts = u.cells();
  for (std::size_t l = u.level(); l <= depth; ++l) {
    for (auto p : pts)
      if (m.apply_word(l, w, p) != p) return false;
    if (l == depth) break;
    std::vector<std::uint32_t> next;
    for (auto p : pts) {
      const auto& kids = m.fiber(l + 1, p);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    pts = std::move(next);
  }
  return true;
}

bool moves_point_over(const ChainModel& m, const Word& w, const Clopen& u, std::size_t level) {
  for (auto p : points_over(m, u, level))
    if (m.apply_word(level, w, p) != p) return true;
  return false;
}

AdaptedReport is_adapted(const ChainModel& m, const Clopen& u, const SearchLimits& limits) {
  check_clopen(m, u);
  if (u.is_empty()) throw InvalidInput("adapted-set test needs a non-empty clopen");
  AdaptedReport report{u, limits.word_bound, true, std::nullopt, 0};

  auto violates = [&](const Word& w) { return verify_adapted_violation(m, u, w); };
  auto hit = find_first_word(m.alphabet().letter_count(), limits.word_bound, limits.budget,
                             limits.exec, violates);
  if (hit) {
    report.adapted = false;
    report.violation = *hit;
  }

  // observed translate count, scanned over the same words
  std::set<std::vector<std::uint32_t>> translates;
  for_each_reduced_word(m.alphabet().letter_count(), limits.word_bound, [&](const Word& w) {
    translates.insert(translate_clopen(m, w, u).cells());
    return true;
  });
  report.translate_count = translates.size();
  return report;
}

bool verify_adapted_violation(const ChainModel& m, const Clopen& u, const Word& w) {
  Clopen moved = translate_clopen(m, w, u);
  if (moved == u) return false;
  return !clopen_intersection(m, moved, u).is_empty();
}

Clopen fixed_cylinder_set(const ChainModel& m, const Word& w, std::size_t level) {
  if (level > m.max_level()) throw InvalidInput("level beyond model depth");
  std::vector<std::uint32_t> cells;
  for (std::uint32_t x = 0; x < m.points(level); ++x)
    if (m.apply_word(level, w, x) == x) cells.push_back(x);
  return Clopen(level, std::move(cells));
}

namespace {

// Candidate cylinders for the witness searches: levels 1..max_cell_level in
// order, cells ascending.  Cylinders at the model's deepest level are never
// candidates since no strictly deeper level is left to witness triviality.
template <class TryCell>
bool scan_cylinders(const ChainModel& m, std::size_t max_cell_level, TryCell&& try_cell) {
  std::size_t top = std::min(max_cell_level, m.max_level() == 0 ? 0 : m.max_level() - 1);
  for (std::size_t l = 1; l <= top; ++l)
    for (std::uint32_t c = 0; c < m.points(l); ++c)
      if (try_cell(CylinderRef{l, c})) return true;
  return false;
}

}  // namespace

FreenessResult topological_freeness_check(const ChainModel& m, const SearchLimits& limits) {
  if (limits.depth > m.max_level()) throw InvalidInput("depth beyond model");
  FreenessResult result;
  result.word_bound = limits.word_bound;
  result.depth = limits.depth;

  scan_cylinders(m, limits.depth, [&](const CylinderRef& cand) {
    auto hit = find_first_word(
        m.alphabet().letter_count(), limits.word_bound, limits.budget, limits.exec,
        [&](const Word& w) {
          if (w.empty()) return false;
          return !m.word_trivial_at(w, limits.depth) && trivial_on_cylinder(m, w, cand);
        });
    if (hit) {
      result.violated = true;
      result.word = *hit;
      result.cylinder = cand;
      return true;
    }
    return false;
  });
  return result;
}

bool verify_freeness_witness(const ChainModel& m, const Word& w, const CylinderRef& c,
                             std::size_t depth) {
  if (c.level == 0 || c.level > depth || c.level >= m.max_level()) return false;
  return !m.word_trivial_at(w, depth) && trivial_on_cylinder(m, w, c);
}

LqaResult lqa_violation_search(const ChainModel& m, const Clopen& outer,
                               const SearchLimits& limits) {
  check_clopen(m, outer);
  if (outer.is_empty()) throw InvalidInput("LQA search needs a non-empty outer clopen");
  if (limits.depth > m.max_level()) throw InvalidInput("depth beyond model");
  LqaResult result;
  result.word_bound = limits.word_bound;
  result.depth = limits.depth;
  result.outer_adapted = is_adapted(m, outer, limits).adapted;

  const auto support = points_over(m, outer, m.max_level());
  auto moves_outer = [&](const Word& w) {
    for (auto p : support)
      if (m.apply_word(m.max_level(), w, p) != p) return true;
    return false;
  };

  scan_cylinders(m, limits.depth, [&](const CylinderRef& cand) {
    if (!cylinder_in_clopen(m, cand.level, cand.cell, outer)) return false;
    auto hit = find_first_word(
        m.alphabet().letter_count(), limits.word_bound, limits.budget, limits.exec,
        [&](const Word& w) {
          if (w.empty()) return false;
          return trivial_on_cylinder(m, w, cand) && moves_outer(w);
        });
    if (hit) {
      result.violated = true;
      result.witness = LqaWitness{*hit, cand, outer, limits.depth};
      return true;
    }
    return false;
  });
  return result;
}

bool verify_lqa_witness(const ChainModel& m, const LqaWitness& w) {
  if (w.inner.level == 0 || w.inner.level >= m.max_level()) return false;
  if (!cylinder_in_clopen(m, w.inner.level, w.inner.cell, w.outer)) return false;
  return moves_point_over(m, w.word, w.outer, m.max_level()) &&
         trivial_on_cylinder(m, w.word, w.inner);
}

NormalityResult kernel_normality_check(const ChainModel& m, const Clopen& inner,
                                       const Clopen& outer, const SearchLimits& limits) {
  check_clopen(m, inner);
  check_clopen(m, outer);
  if (inner.is_empty() || outer.is_empty())
    throw InvalidInput("normality check needs non-empty clopen sets");
  if (!clopen_subset(m, inner, outer))
    throw InvalidInput("normality check needs V contained in U");
  if (limits.depth > m.max_level() || limits.depth < inner.level())
    throw InvalidInput("depth must lie between V's resolution and the model depth");

  NormalityResult result;
  result.word_bound = limits.word_bound;
  result.depth = limits.depth;
  result.inner_adapted = is_adapted(m, inner, limits).adapted;
  result.outer_adapted = is_adapted(m, outer, limits).adapted;

  auto kernel = collect_words(
      m.alphabet().letter_count(), limits.word_bound, limits.budget, limits.exec,
      [&](const Word& w) { return trivial_on_clopen(m, w, inner, limits.depth); });
  auto stabilizer = collect_words(
      m.alphabet().letter_count(), limits.word_bound, limits.budget, limits.exec,
      [&](const Word& w) { return clopen_equal(m, translate_clopen(m, w, outer), outer); });

  std::uint64_t pairs = saturating_mul(kernel.size(), stabilizer.size());
  if (pairs > limits.budget)
    throw BudgetError("normality check needs " + std::to_string(pairs) +
                      " conjugation pairs, over the cap of " + std::to_string(limits.budget));

  for (const auto& w : kernel) {
    if (w.empty()) continue;
    for (const auto& u : stabilizer) {
      Word conj = reduce(u * w * u.inverse());
      if (!trivial_on_clopen(m, conj, inner, limits.depth)) {
        result.violated = true;
        result.witness = NormalityWitness{u, w};
        return result;
      }
    }
  }
  return result;
}

bool verify_normality_witness(const ChainModel& m, const Clopen& inner, const Clopen& outer,
                              const NormalityWitness& w, std::size_t depth) {
  if (!clopen_equal(m, translate_clopen(m, w.conjugator, outer), outer)) return false;
  if (!trivial_on_clopen(m, w.kernel_word, inner, depth)) return false;
  Word conj = reduce(w.conjugator * w.kernel_word * w.conjugator.inverse());
  return !trivial_on_clopen(m, conj, inner, depth);
}

ChainProbeReport ascending_chain_probe(const ChainModel& m, const PathPoint& x,
                                       const std::vector<std::size_t>& depths,
                                       const SearchLimits& limits) {
  if (depths.empty()) throw InvalidInput("chain probe needs at least one depth");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] == 0 || depths[i] > x.depth())
      throw InvalidInput("probe depths must lie within the path point");
    if (i > 0 && depths[i] <= depths[i - 1])
      throw InvalidInput("probe depths must be strictly increasing");
  }

  ChainProbeReport report;
  std::vector<std::vector<Word>> members;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    CylinderRef cyl{depths[i], x.coords[depths[i]]};
    auto raw = collect_words(m.alphabet().letter_count(), limits.word_bound, limits.budget,
                             limits.exec,
                             [&](const Word& w) { return trivial_on_cylinder(m, w, cyl); });
    // dedup by deepest-level action, first representative wins
    std::map<std::vector<std::uint32_t>, bool> seen;
    std::vector<Word> reps;
    for (auto& w : raw) {
      auto image = m.level_image(w, m.max_level()).images();
      if (seen.emplace(std::move(image), true).second) reps.push_back(std::move(w));
    }
    ChainProbeStep step;
    step.depth = depths[i];
    step.element_count = reps.size();
    if (i > 0) {
      // the chain ascends by construction; a strict step has a word trivial
      // on the smaller cylinder but not on the larger one
      CylinderRef prev{depths[i - 1], x.coords[depths[i - 1]]};
      for (const auto& w : reps) {
        if (!trivial_on_cylinder(m, w, prev)) {
          step.strict_increase = true;
          step.separating_word = w;
          break;
        }
      }
      report.any_strict_increase = report.any_strict_increase || step.strict_increase;
    }
    members.push_back(std::move(reps));
    report.steps.push_back(std::move(step));
  }
  return report;
}

GermResult germ_hausdorff_witness(const ChainModel& m, const PathPoint& x,
                                  const SearchLimits& limits) {
  if (x.depth() != m.max_level())
    throw InvalidInput("germ witness search needs a path point at full model depth");
  GermResult result;
  result.word_bound = limits.word_bound;
  if (m.max_level() < 3) return result;  // no testable level range at this truncation

  std::size_t top = m.max_level() - 2;
  auto qualifies = [&](const Word& w) -> std::optional<std::vector<CylinderRef>> {
    for (std::size_t l = 0; l <= m.max_level(); ++l)
      if (m.apply_word(l, w, x.coords[l]) != x.coords[l]) return std::nullopt;
    if (m.word_trivial_at(w, m.max_level())) return std::nullopt;
    std::vector<CylinderRef> cells;
    for (std::size_t l = 1; l <= top; ++l) {
      Clopen neighborhood = Clopen::cylinder(l, x.coords[l]);
      if (!moves_point_over(m, w, neighborhood, m.max_level())) return std::nullopt;
      bool found = false;
      for (std::size_t cl = l + 1; cl <= m.max_level() - 1 && !found; ++cl) {
        for (auto cell : points_over(m, neighborhood, cl)) {
          if (trivial_on_cylinder(m, w, CylinderRef{cl, cell})) {
            cells.push_back(CylinderRef{cl, cell});
            found = true;
            break;
          }
        }
      }
      if (!found) return std::nullopt;
    }
    return cells;
  };

  auto hit = find_first_word(m.alphabet().letter_count(), limits.word_bound, limits.budget,
                             limits.exec,
                             [&](const Word& w) { return qualifies(w).has_value(); });
  if (hit) {
    result.found = true;
    result.witness = GermWitness{*hit, *qualifies(*hit)};
  }
  return result;
}

bool verify_germ_witness(const ChainModel& m, const PathPoint& x, const GermWitness& w) {
  if (x.depth() != m.max_level() || m.max_level() < 3) return false;
  for (std::size_t l = 0; l <= m.max_level(); ++l)
    if (m.apply_word(l, w.word, x.coords[l]) != x.coords[l]) return false;
  if (m.word_trivial_at(w.word, m.max_level())) return false;
  std::size_t top = m.max_level() - 2;
  if (w.trivial_cells.size() != top) return false;
  for (std::size_t l = 1; l <= top; ++l) {
    const CylinderRef& cell = w.trivial_cells[l - 1];
    Clopen neighborhood = Clopen::cylinder(l, x.coords[l]);
    if (!moves_point_over(m, w.word, neighborhood, m.max_level())) return false;
    if (cell.level <= l || cell.level >= m.max_level()) return false;
    if (!cylinder_in_clopen(m, cell.level, cell.cell, neighborhood)) return false;
    if (!trivial_on_cylinder(m, w.word, cell)) return false;
  }
  return true;
}

}  // namespace cantor

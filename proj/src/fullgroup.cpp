#include "cantor/fullgroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cantor {

PiecewiseElement::PiecewiseElement(std::size_t resolution, std::vector<Piece> pieces)
    : resolution_(resolution), pieces_(std::move(pieces)) {
  for (const auto& p : pieces_)
    if (p.domain.level() != resolution_)
      throw InvalidInput("piecewise pieces must share the element's resolution");
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) {
    if (a.domain.cells().empty() || b.domain.cells().empty())
      return b.domain.cells().empty() && !a.domain.cells().empty();
    return a.domain.cells().front() < b.domain.cells().front();
  });
}

PiecewiseElement PiecewiseElement::whole_space(const ChainModel& m, std::size_t resolution,
                                               Word w) {
  std::vector<Piece> pieces;
  pieces.push_back({Clopen::full_space(m, resolution), std::move(w)});
  return PiecewiseElement(resolution, std::move(pieces));
}

PiecewiseElement PiecewiseElement::identity(const ChainModel& m, std::size_t resolution) {
  return whole_space(m, resolution, Word());
}

const Word& PiecewiseElement::word_at(std::uint32_t cell) const {
  for (const auto& p : pieces_)
    if (p.domain.contains_cell(cell)) return p.word;
  throw InvalidInput("cell " + std::to_string(cell) + " not covered by any piece");
}

PiecewiseCheck validate_piecewise(const ChainModel& m, const PiecewiseElement& pe,
                                  std::size_t depth) {
  if (depth > m.max_level() || pe.resolution() > depth)
    return {false, "depth must lie between the resolution and the model depth"};
  std::size_t n = m.points(pe.resolution());
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < pe.pieces().size(); ++i) {
    for (auto c : pe.pieces()[i].domain.cells()) {
      if (c >= n) return {false, "cell " + std::to_string(c) + " out of range"};
      if (owner[c] >= 0)
        return {false, "cell " + std::to_string(c) + " covered by pieces " +
                           std::to_string(owner[c]) + " and " + std::to_string(i)};
      owner[c] = static_cast<int>(i);
    }
  }
  for (std::uint32_t c = 0; c < n; ++c)
    if (owner[c] < 0) return {false, "cell " + std::to_string(c) + " not covered"};

  // induced cell map at the given depth must be a bijection
  std::vector<bool> hit(m.points(depth), false);
  for (const auto& piece : pe.pieces()) {
    for (auto c : points_over(m, piece.domain, depth)) {
      std::uint32_t image = m.apply_word(depth, piece.word, c);
      if (hit[image])
        return {false, "depth-" + std::to_string(depth) + " cell " + std::to_string(image) +
                           " hit twice; not a bijection"};
      hit[image] = true;
    }
  }
  return {true, ""};
}

std::uint32_t apply_piecewise(const ChainModel& m, const PiecewiseElement& pe,
                              std::size_t level, std::uint32_t point) {
  if (level < pe.resolution()) throw InvalidInput("apply level above the resolution");
  const Word& w = pe.word_at(m.ancestor(level, point, pe.resolution()));
  return m.apply_word(level, w, point);
}

namespace {

PiecewiseElement from_cell_words(std::size_t resolution,
                                 const std::vector<Word>& word_per_cell) {
  // merge cells sharing a word, order pieces by least cell
  std::vector<std::pair<Word, std::vector<std::uint32_t>>> groups;
  for (std::uint32_t c = 0; c < word_per_cell.size(); ++c) {
    bool placed = false;
    for (auto& g : groups)
      if (g.first == word_per_cell[c]) {
        g.second.push_back(c);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({word_per_cell[c], {c}});
  }
  std::vector<Piece> pieces;
  for (auto& g : groups) pieces.push_back({Clopen(resolution, std::move(g.second)), g.first});
  return PiecewiseElement(resolution, std::move(pieces));
}

std::vector<Word> cell_words(const ChainModel& m, const PiecewiseElement& pe,
                             std::size_t resolution) {
  std::vector<Word> out(m.points(resolution));
  for (std::uint32_t c = 0; c < out.size(); ++c)
    out[c] = pe.word_at(m.ancestor(resolution, c, pe.resolution()));
  return out;
}

}  // namespace

PiecewiseElement compose_piecewise(const ChainModel& m, const PiecewiseElement& f,
                                   const PiecewiseElement& g) {
  std::size_t r = std::max(f.resolution(), g.resolution());
  auto gw = cell_words(m, g, r);
  std::vector<Word> out(m.points(r));
  for (std::uint32_t c = 0; c < out.size(); ++c) {
    std::uint32_t mid = m.apply_word(r, gw[c], c);
    const Word& fw = f.word_at(m.ancestor(r, mid, f.resolution()));
    out[c] = reduce(fw * gw[c]);
  }
  return from_cell_words(r, out);
}

PiecewiseElement invert_piecewise(const ChainModel& m, const PiecewiseElement& pe) {
  std::size_t r = pe.resolution();
  auto words = cell_words(m, pe, r);
  std::vector<Word> out(m.points(r));
  std::vector<bool> assigned(m.points(r), false);
  for (std::uint32_t c = 0; c < words.size(); ++c) {
    std::uint32_t image = m.apply_word(r, words[c], c);
    if (assigned[image])
      throw InvalidInput("cannot invert: cell map is not a bijection at the resolution");
    assigned[image] = true;
    out[image] = reduce(words[c].inverse());
  }
  return from_cell_words(r, out);
}

PiecewiseElement canonicalize_piecewise(const ChainModel& m, const PiecewiseElement& pe) {
  return from_cell_words(pe.resolution(), cell_words(m, pe, pe.resolution()));
}

bool piecewise_equal(const ChainModel& m, const PiecewiseElement& a, const PiecewiseElement& b) {
  std::size_t r = std::max(a.resolution(), b.resolution());
  auto wa = cell_words(m, a, r);
  auto wb = cell_words(m, b, r);
  for (std::uint32_t c = 0; c < wa.size(); ++c)
    if (reduce(wa[c]) != reduce(wb[c])) return false;
  return true;
}

LevelFamily generator_family(const ChainModel& m, std::size_t symbol, std::size_t depth) {
  if (depth > m.max_level()) throw InvalidInput("depth beyond model");
  LevelFamily f;
  for (std::size_t l = 0; l <= depth; ++l)
    f.by_level.push_back(m.level(l).generator_images.at(symbol));
  return f;
}

LevelFamily word_family(const ChainModel& m, const Word& w, std::size_t depth) {
  if (depth > m.max_level()) throw InvalidInput("depth beyond model");
  LevelFamily f;
  for (std::size_t l = 0; l <= depth; ++l) f.by_level.push_back(m.level_image(w, l));
  return f;
}

namespace {

// Does w agree with the family on every point over `cell` at levels r..D?
bool word_matches_family(const ChainModel& m, const Word& w, const LevelFamily& f,
                         std::size_t r, std::uint32_t cell, std::size_t depth) {
  std::vector<std::uint32_t> pts{cell};
  for (std::size_t l = r; l <= depth; ++l) {
    for (auto p : pts)
      if (m.apply_word(l, w, p) != f.by_level[l](p)) return false;
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

// Merge complete sibling fibers sharing one word into their parent cylinder.
// Pieces stay at the working resolution as multi-cell clopens; a unit that
// fails to merge at some level is final.
PiecewiseElement coarsen_fibers(const ChainModel& m, std::size_t r,
                                const std::vector<Word>& word_per_cell) {
  struct Unit {
    std::uint32_t top;  // the cylinder cell this unit covers, at unit_level
    std::vector<std::uint32_t> cells;  // covered cells at resolution r
    Word word;
  };
  std::vector<Unit> final_units;
  std::vector<Unit> active;
  for (std::uint32_t c = 0; c < word_per_cell.size(); ++c)
    active.push_back({c, {c}, word_per_cell[c]});
  for (std::size_t unit_level = r; unit_level > 0 && !active.empty(); --unit_level) {
    std::map<std::uint32_t, std::vector<std::size_t>> by_parent;
    for (std::size_t i = 0; i < active.size(); ++i)
      by_parent[m.project(unit_level, active[i].top)].push_back(i);
    std::vector<Unit> next;
    for (auto& [parent, idxs] : by_parent) {
      bool complete = idxs.size() == m.fiber(unit_level, parent).size();
      bool same_word = true;
      for (std::size_t i = 1; i < idxs.size() && same_word; ++i)
        same_word = active[idxs[i]].word == active[idxs[0]].word;
      if (complete && same_word && idxs.size() > 1) {
        Unit u{parent, {}, active[idxs[0]].word};
        for (auto i : idxs)
          u.cells.insert(u.cells.end(), active[i].cells.begin(), active[i].cells.end());
        next.push_back(std::move(u));
      } else {
        for (auto i : idxs) final_units.push_back(std::move(active[i]));
      }
    }
    active = std::move(next);
  }
  final_units.insert(final_units.end(), std::make_move_iterator(active.begin()),
                     std::make_move_iterator(active.end()));
  std::vector<Piece> pieces;
  for (auto& u : final_units)
    pieces.push_back({Clopen(r, std::move(u.cells)), std::move(u.word)});
  return PiecewiseElement(r, std::move(pieces));
}

}  // namespace

ExpressResult express_in_full_group(const ChainModel& target, const LevelFamily& f,
                                    const SearchLimits& limits) {
  if (f.by_level.empty()) throw InvalidInput("empty level family");
  std::size_t depth = std::min(f.depth(), target.max_level());
  for (std::size_t l = 0; l <= depth; ++l)
    if (f.by_level[l].degree() != target.points(l))
      throw InvalidInput("level family degree mismatch with target model");

  for (std::size_t l = 1; l <= depth; ++l)
    for (std::uint32_t x = 0; x < target.points(l); ++x)
      if (target.project(l, f.by_level[l](x)) != f.by_level[l - 1](target.project(l, x)))
        throw InvalidInput("level family is not projection-compatible at level " +
                           std::to_string(l));

  ExpressResult result;
  for (std::size_t r = 0; r <= depth; ++r) {
    std::vector<Word> words(target.points(r));
    bool all_covered = true;
    std::optional<CylinderRef> first_uncovered;
    for (std::uint32_t cell = 0; cell < target.points(r); ++cell) {
      auto hit = find_first_word(
          target.alphabet().letter_count(), limits.word_bound, limits.budget, limits.exec,
          [&](const Word& w) { return word_matches_family(target, w, f, r, cell, depth); });
      if (!hit) {
        all_covered = false;
        if (!first_uncovered) first_uncovered = CylinderRef{r, cell};
        break;
      }
      words[cell] = *hit;
    }
    if (all_covered) {
      result.found = true;
      result.element = coarsen_fibers(target, r, words);
      return result;
    }
    if (r == depth) result.uncovered = first_uncovered;
  }
  return result;
}

bool models_share_tree(const ChainModel& m1, const ChainModel& m2) {
  if (m1.max_level() != m2.max_level()) return false;
  for (std::size_t l = 0; l <= m1.max_level(); ++l) {
    if (m1.points(l) != m2.points(l)) return false;
    if (l > 0 && m1.level(l).projection != m2.level(l).projection) return false;
  }
  return true;
}

CoeResult coe_check(const ChainModel& m1, const ChainModel& m2, const SearchLimits& limits) {
  if (!models_share_tree(m1, m2))
    throw InvalidInput("continuous-orbit-equivalence check needs models on the same tree");
  std::size_t depth = std::min(limits.depth, m1.max_level());

  CoeResult result;
  CoeCertificate cert;
  cert.word_bound = limits.word_bound;
  cert.depth = depth;

  auto run_direction = [&](const ChainModel& from, const ChainModel& to,
                           std::vector<GeneratorTable>& out, const char* tag) -> bool {
    for (std::size_t s = 0; s < from.alphabet().size(); ++s) {
      auto expressed = express_in_full_group(to, generator_family(from, s, depth), limits);
      if (!expressed.found) {
        result.failure = std::string("generator '") + from.alphabet().symbol(s) + "' of " +
                         tag + " not expressible within bounds";
        return false;
      }
      out.push_back({from.alphabet().symbol(s), std::move(*expressed.element)});
    }
    return true;
  };

  if (!run_direction(m1, m2, cert.forward, "model 1")) return result;
  if (!run_direction(m2, m1, cert.backward, "model 2")) return result;
  result.certified = true;
  result.certificate = std::move(cert);
  return result;
}

bool verify_coe_certificate(const ChainModel& m1, const ChainModel& m2,
                            const CoeCertificate& cert) {
  if (!models_share_tree(m1, m2)) return false;
  std::size_t depth = cert.depth;
  auto check_direction = [&](const ChainModel& from, const ChainModel& to,
                             const std::vector<GeneratorTable>& tables) {
    if (tables.size() != from.alphabet().size()) return false;
    for (const auto& entry : tables) {
      auto sym = from.alphabet().find(entry.generator);
      if (!sym) return false;
      if (!validate_piecewise(to, entry.element, depth).valid) return false;
      // replay: the piecewise element reproduces the generator at depth
      for (std::uint32_t p = 0; p < to.points(depth); ++p)
        if (apply_piecewise(to, entry.element, depth, p) !=
            from.apply_letter(depth, plain_letter(*sym), p))
          return false;
    }
    return true;
  };
  return check_direction(m1, m2, cert.forward) && check_direction(m2, m1, cert.backward);
}

ChainModel twist_action(const ChainModel& m, const Clopen& domain,
                        const std::vector<TwistEntry>& twists, const SearchLimits& limits) {
  check_clopen(m, domain);
  if (domain.is_empty()) throw InvalidInput("twist domain must be non-empty");
  if (twists.empty()) throw InvalidInput("twist needs at least one entry");
  auto adapted = is_adapted(m, domain, limits);
  if (!adapted.adapted)
    throw InvalidInput("twist domain is not adapted up to the bound; witness word " +
                       format_word(m.alphabet(), *adapted.violation));
  for (const auto& entry : twists) {
    if (!clopen_equal(m, translate_clopen(m, entry.from, domain), domain))
      throw InvalidInput("twist source word " + format_word(m.alphabet(), entry.from) +
                         " does not stabilize the domain");
    if (!clopen_equal(m, translate_clopen(m, entry.to, domain), domain))
      throw InvalidInput("twist image word " + format_word(m.alphabet(), entry.to) +
                         " leaves the stabilizer of the domain");
  }

  std::vector<std::string> symbols = m.alphabet().symbols();
  for (std::size_t i = 0; i < twists.size(); ++i) {
    std::string name = "u" + std::to_string(i);
    while (std::find(symbols.begin(), symbols.end(), name) != symbols.end()) name += "_";
    symbols.push_back(name);
  }
  GeneratorAlphabet alphabet(symbols);

  std::vector<ActionLevel> levels;
  for (std::size_t l = 0; l <= m.max_level(); ++l) {
    ActionLevel lev = m.level(l);
    lev.generator_images.reserve(symbols.size());
    for (const auto& entry : twists) {
      std::vector<std::uint32_t> im(m.points(l));
      for (std::uint32_t x = 0; x < im.size(); ++x) im[x] = x;
      if (l >= domain.level()) {
        for (auto x : points_over(m, domain, l)) im[x] = m.apply_word(l, entry.to, x);
      }
      lev.generator_images.push_back(Permutation(std::move(im)));
    }
    levels.push_back(std::move(lev));
  }
  ChainModel twisted(std::move(alphabet), std::move(levels), m.name() + "+twist");
  auto report = validate_chain(twisted);
  if (!report.valid())
    throw InvalidInput("twisted action does not respect the level structure of the chain");
  return twisted;
}

std::vector<HolonomyRestriction> restricted_holonomy(const ChainModel& m, const Clopen& u,
                                                     const SearchLimits& limits) {
  check_clopen(m, u);
  if (u.is_empty()) throw InvalidInput("restricted holonomy needs a non-empty clopen");
  std::size_t depth = limits.depth;
  if (depth > m.max_level() || depth < u.level())
    throw InvalidInput("depth must lie between the resolution and the model depth");

  auto stabilizers = collect_words(
      m.alphabet().letter_count(), limits.word_bound, limits.budget, limits.exec,
      [&](const Word& w) { return clopen_equal(m, translate_clopen(m, w, u), u); });

  auto support = points_over(m, u, depth);
  std::vector<HolonomyRestriction> out;
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& w : stabilizers) {
    std::vector<std::uint32_t> images;
    images.reserve(support.size());
    for (auto p : support) images.push_back(m.apply_word(depth, w, p));
    if (seen.insert(images).second) {
      HolonomyRestriction r;
      r.word = w;
      for (std::size_t i = 0; i < support.size(); ++i) r.mapping.push_back({support[i], images[i]});
      out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

using CellMap = std::map<std::uint32_t, std::uint32_t>;

CellMap conjugate_mapping(const HolonomyRestriction& r, const CellMap& h) {
  // h o r o h^-1 on the h-side support
  CellMap out;
  for (const auto& [from, to] : r.mapping) out[h.at(from)] = h.at(to);
  return out;
}

CellMap plain_mapping(const HolonomyRestriction& r) {
  CellMap out;
  for (const auto& [from, to] : r.mapping) out[from] = to;
  return out;
}

}  // namespace

ReturnEquivResult return_equivalence_check(
    const ChainModel& m1, const Clopen& u1, const ChainModel& m2, const Clopen& u2,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& cell_bijection,
    const SearchLimits& limits) {
  check_clopen(m1, u1);
  check_clopen(m2, u2);
  ReturnEquivResult result;

  auto support1 = points_over(m1, u1, limits.depth);
  auto support2 = points_over(m2, u2, limits.depth);
  if (support1.size() != support2.size())
    throw InvalidInput("cell decompositions have different sizes at the common depth");

  CellMap h;
  if (cell_bijection.empty()) {
    if (support1 != support2)
      throw InvalidInput("identity matching needs equal cell decompositions");
    for (auto p : support1) h[p] = p;
  } else {
    std::set<std::uint32_t> used;
    for (const auto& [a, b] : cell_bijection) {
      if (!std::binary_search(support1.begin(), support1.end(), a) ||
          !std::binary_search(support2.begin(), support2.end(), b))
        throw InvalidInput("cell bijection entry outside the decompositions");
      if (h.count(a) || used.count(b)) throw InvalidInput("cell bijection is not a bijection");
      h[a] = b;
      used.insert(b);
    }
    if (h.size() != support1.size())
      throw InvalidInput("cell bijection must cover the whole decomposition");
  }
  CellMap h_inv;
  for (const auto& [a, b] : h) h_inv[b] = a;

  auto hol1 = restricted_holonomy(m1, u1, limits);
  auto hol2 = restricted_holonomy(m2, u2, limits);

  std::map<CellMap, const HolonomyRestriction*> index2;
  for (const auto& r : hol2) index2[plain_mapping(r)] = &r;
  std::map<CellMap, const HolonomyRestriction*> index1;
  for (const auto& r : hol1) index1[plain_mapping(r)] = &r;

  ReturnEquivCertificate cert;
  cert.u1 = u1;
  cert.u2 = u2;
  cert.word_bound = limits.word_bound;
  cert.depth = limits.depth;
  for (const auto& [a, b] : h) cert.cell_bijection.push_back({a, b});

  for (const auto& r : hol1) {
    auto conj = conjugate_mapping(r, h);
    auto hit = index2.find(conj);
    if (hit == index2.end()) {
      result.failure = "restriction of " + format_word(m1.alphabet(), r.word) +
                       " (model 1) has no match after conjugation";
      return result;
    }
    cert.matches.push_back({r.word, hit->second->word});
  }
  for (const auto& r : hol2) {
    auto conj = conjugate_mapping(r, h_inv);
    if (index1.find(conj) == index1.end()) {
      result.failure = "restriction of " + format_word(m2.alphabet(), r.word) +
                       " (model 2) has no match after conjugation";
      return result;
    }
  }
  result.certified = true;
  result.certificate = std::move(cert);
  return result;
}

bool verify_return_certificate(const ChainModel& m1, const ChainModel& m2,
                               const ReturnEquivCertificate& cert) {
  SearchLimits limits;
  limits.word_bound = cert.word_bound;
  limits.depth = cert.depth;
  auto rerun = return_equivalence_check(m1, cert.u1, m2, cert.u2, cert.cell_bijection, limits);
  if (!rerun.certified) return false;
  // recorded matches must agree pairwise under the recorded bijection
  CellMap h;
  for (const auto& [a, b] : cert.cell_bijection) h[a] = b;
  auto support1 = points_over(m1, cert.u1, cert.depth);
  for (const auto& [w1, w2] : cert.matches) {
    for (auto p : support1) {
      auto it = h.find(p);
      if (it == h.end()) return false;
      if (h.at(m1.apply_word(cert.depth, w1, p)) != m2.apply_word(cert.depth, w2, it->second))
        return false;
    }
  }
  return true;
}

}  // namespace cantor

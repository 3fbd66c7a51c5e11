#include "cantor/clopen.hpp"

#include <algorithm>
#include <charconv>

namespace cantor {

Clopen::Clopen(std::size_t level, std::vector<std::uint32_t> cells)
    : level_(level), cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

Clopen Clopen::full_space(const ChainModel& m, std::size_t level) {
  std::vector<std::uint32_t> cells(m.points(level));
  for (std::uint32_t i = 0; i < cells.size(); ++i) cells[i] = i;
  return Clopen(level, std::move(cells));
}

bool Clopen::contains_cell(std::uint32_t cell) const {
  return std::binary_search(cells_.begin(), cells_.end(), cell);
}

void check_clopen(const ChainModel& m, const Clopen& a) {
  if (a.level() > m.max_level()) throw InvalidInput("clopen resolution beyond model depth");
  for (auto c : a.cells())
    if (c >= m.points(a.level())) throw InvalidInput("clopen cell out of range for this model");
}

Clopen refine_to_level(const ChainModel& m, const Clopen& a, std::size_t level) {
  check_clopen(m, a);
  if (level < a.level()) throw InvalidInput("refine target must be at least the resolution");
  if (level > m.max_level()) throw InvalidInput("refine target beyond model depth");
  std::vector<std::uint32_t> cells = a.cells();
  for (std::size_t l = a.level(); l < level; ++l) {
    std::vector<std::uint32_t> next;
    for (auto c : cells) {
      const auto& kids = m.fiber(l + 1, c);
      next.insert(next.end(), kids.begin(), kids.end());
    }
    cells = std::move(next);
  }
  return Clopen(level, std::move(cells));
}

Clopen canonicalize(const ChainModel& m, const Clopen& a) {
  check_clopen(m, a);
  Clopen cur = a;
  while (cur.level() > 0 && !cur.is_empty()) {
    std::vector<std::uint32_t> parents;
    for (auto c : cur.cells()) parents.push_back(m.project(cur.level(), c));
    std::sort(parents.begin(), parents.end());
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
    std::size_t full = 0;
    for (auto p : parents) {
      const auto& kids = m.fiber(cur.level(), p);
      bool complete = std::all_of(kids.begin(), kids.end(),
                                  [&](std::uint32_t k) { return cur.contains_cell(k); });
      if (complete) ++full;
    }
    if (full != parents.size()) break;
    cur = Clopen(cur.level() - 1, std::move(parents));
  }
  return cur;
}

namespace {

std::pair<Clopen, Clopen> common_refinement(const ChainModel& m, const Clopen& a,
                                            const Clopen& b) {
  std::size_t level = std::max(a.level(), b.level());
  return {refine_to_level(m, a, level), refine_to_level(m, b, level)};
}

}  // namespace

Clopen clopen_union(const ChainModel& m, const Clopen& a, const Clopen& b) {
  auto [ra, rb] = common_refinement(m, a, b);
  std::vector<std::uint32_t> cells = ra.cells();
  cells.insert(cells.end(), rb.cells().begin(), rb.cells().end());
  return Clopen(ra.level(), std::move(cells));
}

Clopen clopen_intersection(const ChainModel& m, const Clopen& a, const Clopen& b) {
  auto [ra, rb] = common_refinement(m, a, b);
  std::vector<std::uint32_t> cells;
  std::set_intersection(ra.cells().begin(), ra.cells().end(), rb.cells().begin(),
                        rb.cells().end(), std::back_inserter(cells));
  return Clopen(ra.level(), std::move(cells));
}

Clopen clopen_complement(const ChainModel& m, const Clopen& a) {
  check_clopen(m, a);
  std::vector<std::uint32_t> cells;
  for (std::uint32_t c = 0; c < m.points(a.level()); ++c)
    if (!a.contains_cell(c)) cells.push_back(c);
  return Clopen(a.level(), std::move(cells));
}

bool clopen_subset(const ChainModel& m, const Clopen& a, const Clopen& b) {
  auto [ra, rb] = common_refinement(m, a, b);
  return std::includes(rb.cells().begin(), rb.cells().end(), ra.cells().begin(),
                       ra.cells().end());
}

bool clopen_equal(const ChainModel& m, const Clopen& a, const Clopen& b) {
  auto [ra, rb] = common_refinement(m, a, b);
  return ra.cells() == rb.cells();
}

Clopen translate_clopen(const ChainModel& m, const Word& w, const Clopen& a) {
  check_clopen(m, a);
  std::vector<std::uint32_t> cells;
  cells.reserve(a.cell_count());
  for (auto c : a.cells()) cells.push_back(m.apply_word(a.level(), w, c));
  return Clopen(a.level(), std::move(cells));
}

bool cylinder_in_clopen(const ChainModel& m, std::size_t level, std::uint32_t cell,
                        const Clopen& u) {
  if (level >= u.level()) return u.contains_cell(m.ancestor(level, cell, u.level()));
  auto refined = refine_to_level(m, Clopen::cylinder(level, cell), u.level());
  return std::includes(u.cells().begin(), u.cells().end(), refined.cells().begin(),
                       refined.cells().end());
}

std::vector<std::uint32_t> points_over(const ChainModel& m, const Clopen& a,
                                       std::size_t at_level) {
  if (at_level < a.level()) throw InvalidInput("points_over target above resolution");
  return refine_to_level(m, a, at_level).cells();
}

std::string format_clopen(const Clopen& a) {
  std::string out = std::to_string(a.level()) + ":";
  for (std::size_t i = 0; i < a.cells().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a.cells()[i]);
  }
  if (a.cells().empty()) out += "-";
  return out;
}

Clopen parse_clopen(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidInput("clopen must look like LEVEL:c1,c2");
  std::size_t level = 0;
  {
    auto head = text.substr(0, colon);
    auto res = std::from_chars(head.data(), head.data() + head.size(), level);
    if (res.ec != std::errc() || res.ptr != head.data() + head.size())
      throw InvalidInput("bad clopen level");
  }
  std::vector<std::uint32_t> cells;
  std::string_view rest = text.substr(colon + 1);
  if (rest != "-") {
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      auto comma = rest.find(',', pos);
      auto tok = rest.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
      std::uint32_t v = 0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw InvalidInput("bad clopen cell '" + std::string(tok) + "'");
      cells.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  }
  return Clopen(level, std::move(cells));
}

}  // namespace cantor

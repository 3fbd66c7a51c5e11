#include "cantor/model.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace cantor {

ChainModel::ChainModel(GeneratorAlphabet alphabet, std::vector<ActionLevel> levels,
                       std::string name)
    : alphabet_(std::move(alphabet)), levels_(std::move(levels)), name_(std::move(name)) {
  if (levels_.empty()) throw InvalidInput("model needs at least level 0");
  if (levels_[0].point_count != 1) throw InvalidInput("level 0 must be a single point");
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    auto& lev = levels_[l];
    if (lev.level != l) throw InvalidInput("levels must be dense and in order");
    if (lev.point_count == 0) throw InvalidInput("empty level");
    if (lev.generator_images.size() != alphabet_.size())
      throw InvalidInput("one generator image per alphabet symbol required");
    for (const auto& p : lev.generator_images)
      if (p.degree() != lev.point_count)
        throw InvalidInput("generator image degree mismatch at level " + std::to_string(l));
    if (l == 0) {
      if (!lev.projection.empty()) throw InvalidInput("level 0 has no projection");
    } else {
      if (lev.projection.size() != lev.point_count)
        throw InvalidInput("projection size mismatch at level " + std::to_string(l));
      for (auto t : lev.projection)
        if (t >= levels_[l - 1].point_count)
          throw InvalidInput("projection target out of range at level " + std::to_string(l));
    }
    if (lev.basepoint >= lev.point_count) throw InvalidInput("basepoint out of range");
  }

  letter_images_.resize(levels_.size());
  children_.resize(levels_.size());
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    letter_images_[l].reserve(alphabet_.letter_count());
    for (std::size_t s = 0; s < alphabet_.size(); ++s) {
      letter_images_[l].push_back(levels_[l].generator_images[s]);
      letter_images_[l].push_back(levels_[l].generator_images[s].inverse());
    }
    if (l > 0) {
      children_[l].resize(levels_[l - 1].point_count);
      for (std::uint32_t p = 0; p < levels_[l].point_count; ++p)
        children_[l][levels_[l].projection[p]].push_back(p);
    }
  }
}

std::uint32_t ChainModel::ancestor(std::size_t l, std::uint32_t point,
                                   std::size_t target_level) const {
  while (l > target_level) {
    point = levels_[l].projection[point];
    --l;
  }
  return point;
}

std::uint32_t ChainModel::apply_word(std::size_t l, const Word& w, std::uint32_t point) const {
  const auto& letters = w.letters();
  const auto& images = letter_images_[l];
  for (std::size_t i = letters.size(); i-- > 0;) {
    if (letters[i] >= images.size()) throw InvalidInput("letter outside the model's alphabet");
    point = images[letters[i]](point);
  }
  return point;
}

Permutation ChainModel::level_image(const Word& w, std::size_t l) const {
  if (l > max_level()) throw InvalidInput("level beyond model depth");
  std::vector<std::uint32_t> im(points(l));
  for (std::uint32_t x = 0; x < im.size(); ++x) im[x] = apply_word(l, w, x);
  return Permutation(std::move(im));
}

bool ChainModel::word_trivial_at(const Word& w, std::size_t l) const {
  for (std::uint32_t x = 0; x < points(l); ++x)
    if (apply_word(l, w, x) != x) return false;
  return true;
}

ValidationReport validate_chain(const ChainModel& m) {
  ValidationReport report;
  for (std::size_t l = 0; l <= m.max_level(); ++l) {
    LevelCheck check;
    check.level = l;

    // transitivity: generator orbit of point 0 covers the level
    {
      std::vector<bool> seen(m.points(l), false);
      std::queue<std::uint32_t> queue;
      queue.push(0);
      seen[0] = true;
      std::size_t found = 1;
      while (!queue.empty()) {
        std::uint32_t x = queue.front();
        queue.pop();
        for (Letter letter = 0; letter < m.alphabet().letter_count(); ++letter) {
          std::uint32_t y = m.apply_letter(l, letter, x);
          if (!seen[y]) {
            seen[y] = true;
            ++found;
            queue.push(y);
          }
        }
      }
      check.transitive = found == m.points(l);
    }

    if (l > 0) {
      // equivariance over generators x points
      for (std::size_t s = 0; s < m.alphabet().size() && check.equivariant; ++s) {
        for (std::uint32_t x = 0; x < m.points(l); ++x) {
          std::uint32_t lhs = m.project(l, m.apply_letter(l, plain_letter(s), x));
          std::uint32_t rhs = m.apply_letter(l - 1, plain_letter(s), m.project(l, x));
          if (lhs != rhs) {
            check.equivariant = false;
            check.equivariance_witness = {s, x};
            break;
          }
        }
      }
      check.basepoint_compatible = m.project(l, m.basepoint(l)) == m.basepoint(l - 1);
      std::size_t expected = m.points(l) / m.points(l - 1);
      check.fibers_uniform = m.points(l) % m.points(l - 1) == 0;
      if (check.fibers_uniform) {
        for (std::uint32_t parent = 0; parent < m.points(l - 1); ++parent) {
          if (m.fiber(l, parent).size() != expected) {
            check.fibers_uniform = false;
            break;
          }
        }
      }
    }
    report.levels.push_back(std::move(check));
  }
  return report;
}

std::vector<Word> kernel_words(const ChainModel& m, std::size_t level,
                               const SearchLimits& limits) {
  if (level > m.max_level()) throw InvalidInput("level beyond model depth");
  auto trivial = collect_words(m.alphabet().letter_count(), limits.word_bound, limits.budget,
                               limits.exec,
                               [&](const Word& w) { return m.word_trivial_at(w, level); });
  // dedup by action at the deepest level; first hit keeps the slot
  std::map<std::vector<std::uint32_t>, bool> seen;
  std::vector<Word> out;
  for (auto& w : trivial) {
    auto image = m.level_image(w, m.max_level()).images();
    if (seen.emplace(std::move(image), true).second) out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::uint32_t> orbit_of_point(const ChainModel& m, std::size_t level,
                                          std::uint32_t point, std::size_t word_bound) {
  if (level > m.max_level() || point >= m.points(level))
    throw InvalidInput("invalid point or level");
  std::vector<int> dist(m.points(level), -1);
  std::queue<std::uint32_t> queue;
  dist[point] = 0;
  queue.push(point);
  while (!queue.empty()) {
    std::uint32_t x = queue.front();
    queue.pop();
    if (static_cast<std::size_t>(dist[x]) >= word_bound) continue;
    for (Letter letter = 0; letter < m.alphabet().letter_count(); ++letter) {
      std::uint32_t y = m.apply_letter(level, letter, x);
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push(y);
      }
    }
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < m.points(level); ++x)
    if (dist[x] >= 0) out.push_back(x);
  return out;
}

PathPoint make_path_point(const ChainModel& m, const std::vector<std::uint32_t>& coords) {
  if (coords.empty() || coords.size() > m.max_level() + 1)
    throw InvalidInput("path point depth out of range");
  for (std::size_t l = 0; l < coords.size(); ++l) {
    if (coords[l] >= m.points(l)) throw InvalidInput("path coordinate out of range");
    if (l > 0 && m.project(l, coords[l]) != coords[l - 1])
      throw InvalidInput("path coordinates are not projection-compatible");
  }
  return PathPoint{coords};
}

PathPoint basepoint_path(const ChainModel& m, std::size_t depth) {
  std::vector<std::uint32_t> coords;
  for (std::size_t l = 0; l <= depth; ++l) coords.push_back(m.basepoint(l));
  return make_path_point(m, coords);
}

}  // namespace cantor

#include "cantor/dot.hpp"

namespace cantor {

std::string export_tree(const ChainModel& m, std::size_t depth) {
  if (depth > m.max_level()) throw InvalidInput("export depth beyond model");
  std::string out = "digraph tree {\n";
  out += "  node [shape=circle];\n";
  for (std::size_t l = 0; l <= depth; ++l)
    for (std::uint32_t c = 0; c < m.points(l); ++c)
      out += "  \"" + std::to_string(l) + ":" + std::to_string(c) + "\";\n";
  for (std::size_t l = 1; l <= depth; ++l)
    for (std::uint32_t c = 0; c < m.points(l); ++c)
      out += "  \"" + std::to_string(l - 1) + ":" + std::to_string(m.project(l, c)) +
             "\" -> \"" + std::to_string(l) + ":" + std::to_string(c) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace cantor

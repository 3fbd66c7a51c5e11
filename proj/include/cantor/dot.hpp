#ifndef CANTOR_DOT_HPP
#define CANTOR_DOT_HPP

#include <string>

#include "cantor/model.hpp"

namespace cantor {

// Rooted tree of cells down to the given depth, in DOT graph text.
// Vertices are "level:index"; edges follow the projection fibers.
// Output order is deterministic: levels ascending, cells ascending.
std::string export_tree(const ChainModel& m, std::size_t depth);

}  // namespace cantor

#endif

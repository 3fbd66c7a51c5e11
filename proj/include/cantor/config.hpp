#ifndef CANTOR_CONFIG_HPP
#define CANTOR_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantor/clopen.hpp"
#include "cantor/gallery.hpp"
#include "cantor/model.hpp"
#include "cantor/scan.hpp"

namespace cantor {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A validated model recipe from a [model] section.
struct ModelSpec {
  enum class Kind { Odometer, Dihedral, Heisenberg, Product, Grigorchuk, Automaton, Explicit };
  Kind kind = Kind::Odometer;
  std::optional<std::string> name;

  std::vector<std::uint32_t> arities;
  std::uint32_t p = 0, q = 0;
  std::size_t depth = 0;
  // product
  std::size_t order = 0;
  std::vector<std::vector<std::uint32_t>> table1, table2;
  int member = 1;
  // automaton
  AutomatonSpec automaton;
  // explicit level tables; permutations stay in cycle notation until the
  // sizes are known
  struct ExplicitLevel {
    std::size_t size = 0;
    std::vector<std::string> perms;  // one per generator, cycle notation
    std::vector<std::uint32_t> projection;
    std::uint32_t basepoint = 0;
  };
  std::vector<std::string> generators;
  std::vector<ExplicitLevel> explicit_levels;  // levels 1..depth
};

ChainModel build_model(const ModelSpec& spec);

struct CommandParams {
  std::string run;
  std::optional<Clopen> set_u, set_v, set_u1, set_u2;
  std::vector<std::uint32_t> point;  // coordinates x_1..x_k
  std::vector<std::size_t> depths;
  bool h_identity = true;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> h_pairs;
  std::vector<std::pair<std::string, std::string>> twist_entries;  // from, to words
  std::size_t dot_depth = 0;
};

struct RunConfig {
  ModelSpec model;
  std::optional<ModelSpec> model2;
  CommandParams command;
  SearchLimits bounds;
  bool has_bounds = false;
  std::optional<std::string> artifact_name;
};

// Strict parse of the sectioned key = value format; unknown keys and
// sections are errors carrying a line number.
RunConfig parse_config(const std::string& text);

// Explicit-model config text for a built model; parse_config accepts it.
std::string explicit_model_config(const ChainModel& m);

}  // namespace cantor

#endif

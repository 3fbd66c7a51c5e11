#include "cantor/gallery.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cantor {

namespace {

std::uint64_t checked_size(std::uint64_t v) {
  if (v > (1ull << 26))
    throw InvalidInput("level would have " + std::to_string(v) + " points; too large");
  return v;
}

Permutation perm_from_fn(std::size_t n, auto&& fn) {
  std::vector<std::uint32_t> im(n);
  for (std::uint32_t x = 0; x < n; ++x) im[x] = fn(x);
  return Permutation(std::move(im));
}

}  // namespace

ChainModel build_odometer(const std::vector<std::uint32_t>& arities) {
  if (arities.empty()) throw InvalidInput("odometer needs at least one arity");
  for (auto a : arities)
    if (a < 2) throw InvalidInput("odometer arities must be at least 2");
  GeneratorAlphabet alphabet({"t"});
  std::vector<ActionLevel> levels;
  std::uint64_t size = 1;
  for (std::size_t l = 0; l <= arities.size(); ++l) {
    if (l > 0) size = checked_size(size * arities[l - 1]);
    ActionLevel lev;
    lev.level = l;
    lev.point_count = static_cast<std::size_t>(size);
    lev.generator_images.push_back(
        perm_from_fn(lev.point_count, [&](std::uint32_t x) {
          return static_cast<std::uint32_t>((x + 1) % size);
        }));
    if (l > 0) {
      std::uint64_t prev = size / arities[l - 1];
      lev.projection.resize(lev.point_count);
      for (std::uint32_t x = 0; x < lev.point_count; ++x)
        lev.projection[x] = static_cast<std::uint32_t>(x % prev);
    }
    levels.push_back(std::move(lev));
  }
  std::string name = "odometer(";
  for (std::size_t i = 0; i < arities.size(); ++i)
    name += (i ? "," : "") + std::to_string(arities[i]);
  name += ")";
  return ChainModel(std::move(alphabet), std::move(levels), name);
}

ChainModel build_dihedral(std::uint32_t p, std::size_t depth) {
  if (p < 3 || p % 2 == 0) throw InvalidInput("dihedral model needs an odd prime p");
  if (depth < 1) throw InvalidInput("depth must be at least 1");
  GeneratorAlphabet alphabet({"t", "s"});
  std::vector<ActionLevel> levels;
  std::uint64_t size = 1;
  for (std::size_t l = 0; l <= depth; ++l) {
    if (l > 0) size = checked_size(size * p);
    ActionLevel lev;
    lev.level = l;
    lev.point_count = static_cast<std::size_t>(size);
    lev.generator_images.push_back(perm_from_fn(lev.point_count, [&](std::uint32_t x) {
      return static_cast<std::uint32_t>((x + 1) % size);
    }));
    lev.generator_images.push_back(perm_from_fn(lev.point_count, [&](std::uint32_t x) {
      return static_cast<std::uint32_t>((size - x) % size);
    }));
    if (l > 0) {
      std::uint64_t prev = size / p;
      lev.projection.resize(lev.point_count);
      for (std::uint32_t x = 0; x < lev.point_count; ++x)
        lev.projection[x] = static_cast<std::uint32_t>(x % prev);
    }
    levels.push_back(std::move(lev));
  }
  return ChainModel(std::move(alphabet), std::move(levels),
                    "dihedral(p=" + std::to_string(p) + ")");
}

namespace {

// Canonical coset representatives for the Heisenberg chain: each coset of
// p^n Z x q^n Z x p^n Z has a unique representative with coordinates in
// range; reducing y by a multiple of q^n shifts z by x*q^n per step.
struct HeisLevel {
  std::int64_t pn, qn;
};

std::int64_t imod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

struct Triple {
  std::int64_t x, y, z;
};

Triple heis_canon(const HeisLevel& lv, Triple g) {
  std::int64_t x = imod(g.x, lv.pn);
  std::int64_t y = imod(g.y, lv.qn);
  std::int64_t b = (y - g.y) / lv.qn;
  std::int64_t z = imod(g.z + g.x * lv.qn * b, lv.pn);
  return {x, y, z};
}

Triple heis_mul(Triple a, Triple b) { return {a.x + b.x, a.y + b.y, a.z + b.z + a.x * b.y}; }

std::uint32_t heis_index(const HeisLevel& lv, Triple t) {
  return static_cast<std::uint32_t>((t.x * lv.qn + t.y) * lv.pn + t.z);
}

Triple heis_decode(const HeisLevel& lv, std::uint32_t idx) {
  std::int64_t z = idx % lv.pn;
  std::int64_t rest = idx / lv.pn;
  std::int64_t y = rest % lv.qn;
  std::int64_t x = rest / lv.qn;
  return {x, y, z};
}

}  // namespace

ChainModel build_heisenberg(std::uint32_t p, std::uint32_t q, std::size_t depth) {
  if (p == q) throw InvalidInput("heisenberg model needs distinct primes");
  if (p < 2 || q < 2) throw InvalidInput("heisenberg parameters must be primes");
  if (depth < 1) throw InvalidInput("depth must be at least 1");
  GeneratorAlphabet alphabet({"X", "Y", "Z"});
  const Triple gens[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  std::vector<ActionLevel> levels;
  for (std::size_t l = 0; l <= depth; ++l) {
    HeisLevel lv{1, 1};
    for (std::size_t i = 0; i < l; ++i) {
      lv.pn *= p;
      lv.qn *= q;
    }
    std::uint64_t size = checked_size(static_cast<std::uint64_t>(lv.pn) * lv.pn * lv.qn);
    ActionLevel lev;
    lev.level = l;
    lev.point_count = static_cast<std::size_t>(size);
    for (const auto& g : gens) {
      lev.generator_images.push_back(perm_from_fn(lev.point_count, [&](std::uint32_t idx) {
        Triple t = heis_decode(lv, idx);
        return heis_index(lv, heis_canon(lv, heis_mul(g, t)));
      }));
    }
    if (l > 0) {
      HeisLevel prev{lv.pn / p, lv.qn / q};
      lev.projection.resize(lev.point_count);
      for (std::uint32_t idx = 0; idx < lev.point_count; ++idx)
        lev.projection[idx] = heis_index(prev, heis_canon(prev, heis_decode(lv, idx)));
    }
    levels.push_back(std::move(lev));
  }
  return ChainModel(std::move(alphabet), std::move(levels),
                    "heisenberg(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")");
}

namespace {

void check_group_table(const std::vector<std::vector<std::uint32_t>>& table, std::size_t n) {
  if (table.size() != n) throw InvalidInput("Cayley table must have one row per element");
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidInput("Cayley table rows must have length n");
    for (auto v : row)
      if (v >= n) throw InvalidInput("Cayley table entry out of range");
  }
  // latin square
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (row_seen[table[i][j]] || col_seen[table[j][i]])
        throw InvalidInput("Cayley table is not a latin square");
      row_seen[table[i][j]] = true;
      col_seen[table[j][i]] = true;
    }
  }
  // identity + associativity
  std::size_t e = n;
  for (std::size_t i = 0; i < n; ++i) {
    bool ident = true;
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] != j || table[j][i] != j) {
        ident = false;
        break;
      }
    if (ident) {
      e = i;
      break;
    }
  }
  if (e == n) throw InvalidInput("Cayley table has no identity element");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw InvalidInput("Cayley table is not associative");
}

std::size_t table_identity(const std::vector<std::vector<std::uint32_t>>& table) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    bool ident = true;
    for (std::size_t j = 0; j < table.size(); ++j)
      if (table[i][j] != j) {
        ident = false;
        break;
      }
    if (ident) return i;
  }
  throw InvalidInput("Cayley table has no identity element");
}

ChainModel build_product_member(std::size_t order,
                                const std::vector<std::vector<std::uint32_t>>& table,
                                const std::vector<std::uint32_t>& arities,
                                const std::string& name) {
  std::vector<std::string> symbols;
  for (std::size_t g = 0; g < order; ++g) symbols.push_back("g" + std::to_string(g));
  symbols.push_back("t");
  GeneratorAlphabet alphabet(std::move(symbols));
  std::uint32_t e = static_cast<std::uint32_t>(table_identity(table));

  std::vector<ActionLevel> levels;
  // level 0: point; level l>=1: top factor x odometer level l-1
  std::uint64_t odo = 1;
  for (std::size_t l = 0; l <= arities.size() + 1; ++l) {
    ActionLevel lev;
    lev.level = l;
    if (l == 0) {
      lev.point_count = 1;
      for (std::size_t g = 0; g <= order; ++g)
        lev.generator_images.push_back(Permutation::identity(1));
      levels.push_back(std::move(lev));
      continue;
    }
    if (l >= 2) odo = checked_size(odo * arities[l - 2]);
    std::uint64_t size = checked_size(order * odo);
    lev.point_count = static_cast<std::size_t>(size);
    auto encode = [&](std::uint64_t x, std::uint64_t r) {
      return static_cast<std::uint32_t>(x * odo + r);
    };
    for (std::size_t g = 0; g < order; ++g) {
      lev.generator_images.push_back(perm_from_fn(lev.point_count, [&](std::uint32_t p) {
        std::uint64_t x = p / odo, r = p % odo;
        return encode(table[g][x], r);
      }));
    }
    lev.generator_images.push_back(perm_from_fn(lev.point_count, [&](std::uint32_t p) {
      std::uint64_t x = p / odo, r = p % odo;
      return encode(x, (r + 1) % odo);
    }));
    std::uint64_t prev_odo = (l >= 2) ? odo / arities[l - 2] : 1;
    lev.projection.resize(lev.point_count);
    for (std::uint32_t p = 0; p < lev.point_count; ++p) {
      std::uint64_t x = p / odo, r = p % odo;
      lev.projection[p] =
          (l == 1) ? 0 : static_cast<std::uint32_t>(x * prev_odo + (r % prev_odo));
    }
    lev.basepoint = encode(e, 0);
    levels.push_back(std::move(lev));
  }
  return ChainModel(std::move(alphabet), std::move(levels), name);
}

}  // namespace

std::pair<ChainModel, ChainModel> build_product_toy(
    std::size_t order, const std::vector<std::vector<std::uint32_t>>& table1,
    const std::vector<std::vector<std::uint32_t>>& table2,
    const std::vector<std::uint32_t>& arities) {
  if (order < 4) throw InvalidInput("product toy needs group order at least 4");
  for (auto a : arities)
    if (a < 2) throw InvalidInput("odometer arities must be at least 2");
  check_group_table(table1, order);
  check_group_table(table2, order);
  return {build_product_member(order, table1, arities, "product-toy-1"),
          build_product_member(order, table2, arities, "product-toy-2")};
}

std::vector<std::vector<std::uint32_t>> cyclic_table(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<std::uint32_t>((i + j) % n);
  return t;
}

std::vector<std::vector<std::uint32_t>> klein_four_table() {
  std::vector<std::vector<std::uint32_t>> t(4, std::vector<std::uint32_t>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t[i][j] = static_cast<std::uint32_t>(i ^ j);
  return t;
}

namespace {

struct AutomatonBuilder {
  const AutomatonSpec& spec;
  std::size_t depth;
  std::map<std::string, std::size_t> state_index;  // into spec.states; identity excluded
  // memo[state][level] built bottom-up
  std::vector<std::vector<Permutation>> memo;

  explicit AutomatonBuilder(const AutomatonSpec& s, std::size_t d) : spec(s), depth(d) {
    for (std::size_t i = 0; i < spec.states.size(); ++i) {
      if (spec.states[i].name == spec.identity_state) continue;
      if (!state_index.emplace(spec.states[i].name, i).second)
        throw InvalidInput("duplicate automaton state '" + spec.states[i].name + "'");
    }
    for (const auto& st : spec.states) {
      if (st.name == spec.identity_state) {
        if (!st.root.is_identity())
          throw InvalidInput("identity state must have a trivial root permutation");
        for (const auto& s : st.sections)
          if (s != spec.identity_state)
            throw InvalidInput("identity state must have identity sections");
        continue;
      }
      for (const auto& s : st.sections)
        if (s != spec.identity_state && !resolves(s))
          throw InvalidInput("section state '" + s + "' does not resolve");
    }
  }

  bool resolves(const std::string& name) const {
    for (const auto& st : spec.states)
      if (st.name == name) return true;
    return false;
  }

  std::uint32_t arity_at(std::size_t tree_level) const {
    // arity of the alphabet consumed at depth tree_level (1-based letters)
    if (spec.arities.size() == 1) return spec.arities[0];
    if (tree_level >= spec.arities.size())
      throw InvalidInput("arity sequence shorter than requested depth");
    return spec.arities[tree_level];
  }

  std::size_t level_size(std::size_t level) const {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < level; ++i) size = checked_size(size * arity_at(i));
    return static_cast<std::size_t>(size);
  }

  // Action of a state on words of the given length; first letter least
  // significant in the index.
  const Permutation& state_perm(const std::string& name, std::size_t level) {
    return memo[index_of(name)][level];
  }

  std::size_t index_of(const std::string& name) const {
    auto it = state_index.find(name);
    if (it == state_index.end()) throw InvalidInput("unknown automaton state '" + name + "'");
    return it->second;
  }

  void build_memo() {
    memo.assign(spec.states.size(), {});
    for (auto& v : memo) v.resize(depth + 1);
    for (std::size_t i = 0; i < spec.states.size(); ++i)
      memo[i][0] = Permutation::identity(1);
    for (std::size_t level = 1; level <= depth; ++level) {
      std::size_t size = level_size(level);
      std::uint32_t n = arity_at(0);
      std::size_t rest = size / n;
      for (std::size_t i = 0; i < spec.states.size(); ++i) {
        const auto& st = spec.states[i];
        if (st.name == spec.identity_state) {
          memo[i][level] = Permutation::identity(size);
          continue;
        }
        if (st.root.degree() != n)
          throw InvalidInput("state '" + st.name + "' root permutation degree " +
                             std::to_string(st.root.degree()) + " does not match arity " +
                             std::to_string(n));
        if (st.sections.size() != n)
          throw InvalidInput("state '" + st.name + "' needs one section per letter");
        std::vector<std::uint32_t> im(size);
        for (std::uint32_t d = 0; d < n; ++d) {
          const std::string& sec = st.sections[d];
          const Permutation* sub = nullptr;
          if (sec != spec.identity_state) sub = &memo[index_of(sec)][level - 1];
          std::uint32_t dd = st.root(d);
          for (std::uint32_t r = 0; r < rest; ++r) {
            std::uint32_t rr = sub ? (*sub)(r) : r;
            im[d + n * r] = dd + n * rr;
          }
        }
        memo[i][level] = Permutation(std::move(im));
      }
    }
  }
};

}  // namespace

ChainModel build_automaton_group(const AutomatonSpec& spec, std::size_t depth,
                                 const std::string& name) {
  if (depth < 1) throw InvalidInput("depth must be at least 1");
  if (spec.arities.empty()) throw InvalidInput("automaton needs a tree arity");
  for (auto a : spec.arities)
    if (a < 2) throw InvalidInput("tree arities must be at least 2");
  if (spec.arities.size() > 1) {
    for (auto a : spec.arities)
      if (a != spec.arities[0])
        throw InvalidInput("automaton states act at every level; arities must be constant");
  }

  AutomatonBuilder builder(spec, depth);
  builder.build_memo();

  std::vector<std::string> symbols;
  for (const auto& st : spec.states)
    if (st.name != spec.identity_state) symbols.push_back(st.name);
  if (symbols.empty())
    throw InvalidInput("automaton action rejected: no non-identity states; orbits are singletons");
  GeneratorAlphabet alphabet(symbols);

  std::vector<ActionLevel> levels;
  for (std::size_t l = 0; l <= depth; ++l) {
    ActionLevel lev;
    lev.level = l;
    lev.point_count = builder.level_size(l);
    for (const auto& sym : symbols)
      lev.generator_images.push_back(builder.state_perm(sym, l));
    if (l > 0) {
      std::size_t prev = builder.level_size(l - 1);
      lev.projection.resize(lev.point_count);
      for (std::uint32_t x = 0; x < lev.point_count; ++x)
        lev.projection[x] = static_cast<std::uint32_t>(x % prev);
    }
    levels.push_back(std::move(lev));
  }
  ChainModel model(std::move(alphabet), std::move(levels), name);

  // transitivity is a property of the automaton, not assumed
  for (std::size_t l = 1; l <= depth; ++l) {
    auto orbit = orbit_of_point(model, l, 0, model.points(l) * model.alphabet().letter_count());
    if (orbit.size() != model.points(l)) {
      std::string msg = "automaton action rejected: not transitive at level " +
                        std::to_string(l) + "; orbits:";
      std::vector<bool> assigned(model.points(l), false);
      for (std::uint32_t x = 0; x < model.points(l); ++x) {
        if (assigned[x]) continue;
        auto orb = orbit_of_point(model, l, x, model.points(l) * model.alphabet().letter_count());
        msg += " {";
        for (std::size_t i = 0; i < orb.size(); ++i) {
          assigned[orb[i]] = true;
          if (i) msg += ",";
          msg += std::to_string(orb[i]);
        }
        msg += "}";
      }
      throw InvalidInput(msg);
    }
  }
  return model;
}

AutomatonSpec grigorchuk_spec() {
  AutomatonSpec spec;
  spec.arities = {2};
  spec.identity_state = "e";
  Permutation swap = parse_cycles("(0 1)", 2);
  Permutation id2 = Permutation::identity(2);
  spec.states.push_back({"a", swap, {"e", "e"}});
  spec.states.push_back({"b", id2, {"a", "c"}});
  spec.states.push_back({"c", id2, {"a", "d"}});
  spec.states.push_back({"d", id2, {"e", "b"}});
  return spec;
}

AutomatonSpec adding_machine_spec() {
  AutomatonSpec spec;
  spec.arities = {2};
  spec.identity_state = "e";
  spec.states.push_back({"t", parse_cycles("(0 1)", 2), {"e", "t"}});
  return spec;
}

ChainModel build_grigorchuk(std::size_t depth) {
  return build_automaton_group(grigorchuk_spec(), depth, "grigorchuk");
}

}  // namespace cantor

#include "cantor/config.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace cantor {

namespace {

struct Entry {
  std::string key, value;
  int line = 0;
  bool consumed = false;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("line " + std::to_string(line) + ": " + message);
}

std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      sections.push_back({trim(s.substr(1, s.size() - 2)), line, {}});
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    if (sections.empty()) fail(line, "key outside any section");
    Entry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line, false};
    if (e.key.empty()) fail(line, "empty key");
    sections.back().entries.push_back(std::move(e));
  }
  return sections;
}

class SectionReader {
 public:
  explicit SectionReader(Section& section) : section_(section) {}

  std::optional<std::string> take(const std::string& key) {
    for (auto& e : section_.entries)
      if (e.key == key && !e.consumed) {
        e.consumed = true;
        return e.value;
      }
    return std::nullopt;
  }

  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v)
      fail(section_.line, "[" + section_.name + "] is missing required key '" + key + "'");
    return *v;
  }

  // all unconsumed entries whose key starts with the prefix, in order
  std::vector<Entry*> take_prefixed(const std::string& prefix) {
    std::vector<Entry*> out;
    for (auto& e : section_.entries)
      if (!e.consumed && e.key.rfind(prefix, 0) == 0) {
        e.consumed = true;
        out.push_back(&e);
      }
    return out;
  }

  void finish() const {
    for (const auto& e : section_.entries)
      if (!e.consumed)
        fail(e.line, "unknown key '" + e.key + "' in [" + section_.name + "]");
  }

  const std::string& name() const { return section_.name; }
  int line() const { return section_.line; }

 private:
  Section& section_;
};

std::size_t to_size(const std::string& v, int line, const std::string& key) {
  std::size_t out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    fail(line, "key '" + key + "' needs a non-negative integer, got '" + v + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    auto at = v.find(sep, pos);
    out.push_back(trim(v.substr(pos, at == std::string::npos ? at : at - pos)));
    if (at == std::string::npos) break;
    pos = at + 1;
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

std::vector<std::uint32_t> to_u32_list(const std::string& v, int line, const std::string& key) {
  std::vector<std::uint32_t> out;
  for (const auto& tok : split_list(v, ','))
    out.push_back(static_cast<std::uint32_t>(to_size(tok, line, key)));
  return out;
}

std::vector<std::vector<std::uint32_t>> to_table(const std::string& v, int line,
                                                 const std::string& key) {
  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& row : split_list(v, ';')) rows.push_back(to_u32_list(row, line, key));
  return rows;
}

Clopen to_clopen(const std::string& v, int line, const std::string& key) {
  try {
    return parse_clopen(v);
  } catch (const std::exception& e) {
    fail(line, "key '" + key + "': " + e.what());
  }
}

AutomatonState parse_state_line(const std::string& name, const std::string& value, int line) {
  // value: perm (0 1) sections 0:e 1:a
  auto perm_at = value.find("perm");
  auto sections_at = value.find("sections");
  if (perm_at == std::string::npos || sections_at == std::string::npos || sections_at < perm_at)
    fail(line, "state line must read 'perm (...) sections 0:STATE 1:STATE ...'");
  std::string perm_text = trim(value.substr(perm_at + 4, sections_at - perm_at - 4));
  std::string sections_text = trim(value.substr(sections_at + 8));

  std::map<std::size_t, std::string> by_letter;
  std::istringstream in(sections_text);
  std::string tok;
  while (in >> tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) fail(line, "section entry must look like LETTER:STATE");
    std::size_t letter = to_size(tok.substr(0, colon), line, "section letter");
    by_letter[letter] = tok.substr(colon + 1);
  }
  if (by_letter.empty()) fail(line, "state needs at least one section");
  std::size_t arity = by_letter.rbegin()->first + 1;
  std::vector<std::string> sections(arity);
  for (std::size_t i = 0; i < arity; ++i) {
    auto it = by_letter.find(i);
    if (it == by_letter.end()) fail(line, "missing section for letter " + std::to_string(i));
    sections[i] = it->second;
  }
  Permutation root(Permutation::identity(arity));
  try {
    root = parse_cycles(perm_text, arity);
  } catch (const std::exception& e) {
    fail(line, std::string("bad state permutation: ") + e.what());
  }
  return AutomatonState{name, std::move(root), std::move(sections)};
}

ModelSpec parse_model_section(Section& section) {
  SectionReader reader(section);
  ModelSpec spec;
  std::string builder = reader.require("builder");
  if (auto n = reader.take("name")) spec.name = *n;

  if (builder == "odometer") {
    spec.kind = ModelSpec::Kind::Odometer;
    spec.arities = to_u32_list(reader.require("arities"), reader.line(), "arities");
  } else if (builder == "dihedral") {
    spec.kind = ModelSpec::Kind::Dihedral;
    spec.p = static_cast<std::uint32_t>(to_size(reader.require("p"), reader.line(), "p"));
    spec.depth = to_size(reader.require("depth"), reader.line(), "depth");
  } else if (builder == "heisenberg") {
    spec.kind = ModelSpec::Kind::Heisenberg;
    spec.p = static_cast<std::uint32_t>(to_size(reader.require("p"), reader.line(), "p"));
    spec.q = static_cast<std::uint32_t>(to_size(reader.require("q"), reader.line(), "q"));
    spec.depth = to_size(reader.require("depth"), reader.line(), "depth");
  } else if (builder == "grigorchuk") {
    spec.kind = ModelSpec::Kind::Grigorchuk;
    spec.depth = to_size(reader.require("depth"), reader.line(), "depth");
  } else if (builder == "product") {
    spec.kind = ModelSpec::Kind::Product;
    spec.order = to_size(reader.require("n"), reader.line(), "n");
    spec.table1 = to_table(reader.require("table1"), reader.line(), "table1");
    spec.table2 = to_table(reader.require("table2"), reader.line(), "table2");
    spec.arities = to_u32_list(reader.require("arities"), reader.line(), "arities");
    std::string member = reader.require("member");
    if (member != "1" && member != "2") fail(reader.line(), "member must be 1 or 2");
    spec.member = member == "1" ? 1 : 2;
  } else if (builder == "automaton") {
    spec.kind = ModelSpec::Kind::Automaton;
    spec.depth = to_size(reader.require("depth"), reader.line(), "depth");
    if (auto arity = reader.take("arity")) {
      spec.automaton.arities = {
          static_cast<std::uint32_t>(to_size(*arity, reader.line(), "arity"))};
    } else {
      spec.automaton.arities =
          to_u32_list(reader.require("arities"), reader.line(), "arities");
    }
    spec.automaton.identity_state = reader.require("identity");
    for (Entry* e : reader.take_prefixed("state ")) {
      std::string state_name = trim(e->key.substr(6));
      if (state_name.empty()) fail(e->line, "state line needs a name");
      spec.automaton.states.push_back(parse_state_line(state_name, e->value, e->line));
    }
    if (spec.automaton.states.empty()) fail(reader.line(), "automaton needs state lines");
  } else if (builder == "explicit") {
    spec.kind = ModelSpec::Kind::Explicit;
    spec.generators = split_list(reader.require("generators"), ',');
    if (spec.generators.empty()) fail(reader.line(), "explicit model needs generators");
    spec.depth = to_size(reader.require("depth"), reader.line(), "depth");
    if (spec.depth == 0) fail(reader.line(), "explicit model depth must be positive");
    spec.explicit_levels.resize(spec.depth);
    for (std::size_t l = 1; l <= spec.depth; ++l) {
      auto& lev = spec.explicit_levels[l - 1];
      std::string tag = std::to_string(l);
      lev.size = to_size(reader.require("size." + tag), reader.line(), "size." + tag);
      lev.perms.resize(spec.generators.size());
      for (std::size_t g = 0; g < spec.generators.size(); ++g)
        lev.perms[g] = reader.require("perm." + tag + "." + spec.generators[g]);
      if (l > 1)
        lev.projection = to_u32_list(reader.require("proj." + tag), reader.line(), "proj." + tag);
      if (auto bp = reader.take("basepoint." + tag))
        lev.basepoint = static_cast<std::uint32_t>(to_size(*bp, reader.line(), "basepoint"));
    }
  } else {
    fail(reader.line(), "unknown builder '" + builder + "'");
  }
  reader.finish();
  return spec;
}

CommandParams parse_command_section(Section& section) {
  SectionReader reader(section);
  CommandParams params;
  params.run = reader.require("run");
  const std::vector<std::string> known = {"validate", "report",      "freeness",
                                          "lqa",      "normality",   "chain-probe",
                                          "germ",     "coe",         "return-equiv",
                                          "twist",    "export-dot"};
  if (std::find(known.begin(), known.end(), params.run) == known.end())
    fail(reader.line(), "unrecognized command '" + params.run + "'");

  if (params.run == "lqa" || params.run == "twist")
    params.set_u = to_clopen(reader.require("U"), reader.line(), "U");
  if (params.run == "normality") {
    params.set_v = to_clopen(reader.require("V"), reader.line(), "V");
    params.set_u = to_clopen(reader.require("U"), reader.line(), "U");
  }
  if (params.run == "chain-probe" || params.run == "germ") {
    params.point = to_u32_list(reader.require("point"), reader.line(), "point");
    if (params.run == "chain-probe")
      for (auto d : to_u32_list(reader.require("depths"), reader.line(), "depths"))
        params.depths.push_back(d);
  }
  if (params.run == "return-equiv") {
    params.set_u1 = to_clopen(reader.require("U1"), reader.line(), "U1");
    params.set_u2 = to_clopen(reader.require("U2"), reader.line(), "U2");
    std::string h = reader.require("h");
    if (h == "identity") {
      params.h_identity = true;
    } else {
      params.h_identity = false;
      for (const auto& tok : split_list(h, ',')) {
        auto sep = tok.find('>');
        if (sep == std::string::npos)
          fail(reader.line(), "h entries must look like FROM>TO");
        params.h_pairs.push_back(
            {static_cast<std::uint32_t>(to_size(tok.substr(0, sep), reader.line(), "h")),
             static_cast<std::uint32_t>(to_size(tok.substr(sep + 1), reader.line(), "h"))});
      }
    }
  }
  if (params.run == "twist") {
    for (std::size_t i = 1;; ++i) {
      auto from = reader.take("twist." + std::to_string(i) + ".from");
      auto to = reader.take("twist." + std::to_string(i) + ".to");
      if (!from && !to) break;
      if (!from || !to)
        fail(reader.line(), "twist entry " + std::to_string(i) + " needs both from and to");
      params.twist_entries.push_back({*from, *to});
    }
    if (params.twist_entries.empty())
      fail(reader.line(), "twist needs twist.1.from / twist.1.to entries");
  }
  if (params.run == "export-dot")
    params.dot_depth = to_size(reader.require("depth"), reader.line(), "depth");

  reader.finish();
  return params;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  auto sections = split_sections(text);
  RunConfig cfg;
  bool saw_model = false, saw_command = false;
  for (auto& section : sections) {
    if (section.name == "model") {
      if (saw_model) fail(section.line, "duplicate [model] section");
      cfg.model = parse_model_section(section);
      saw_model = true;
    } else if (section.name == "model2") {
      if (cfg.model2) fail(section.line, "duplicate [model2] section");
      cfg.model2 = parse_model_section(section);
    } else if (section.name == "command") {
      if (saw_command) fail(section.line, "duplicate [command] section");
      cfg.command = parse_command_section(section);
      saw_command = true;
    } else if (section.name == "bounds") {
      SectionReader reader(section);
      cfg.bounds.word_bound = to_size(reader.require("L"), reader.line(), "L");
      if (auto d = reader.take("D")) cfg.bounds.depth = to_size(*d, reader.line(), "D");
      if (auto b = reader.take("budget"))
        cfg.bounds.budget = to_size(*b, reader.line(), "budget");
      if (cfg.bounds.word_bound == 0) fail(reader.line(), "bound L must be positive");
      reader.finish();
      cfg.has_bounds = true;
    } else if (section.name == "output") {
      SectionReader reader(section);
      if (auto a = reader.take("artifact")) cfg.artifact_name = *a;
      reader.finish();
    } else {
      fail(section.line, "unknown section [" + section.name + "]");
    }
  }
  if (!saw_model) throw ConfigError("config needs a [model] section");
  if (!saw_command) throw ConfigError("config needs a [command] section");

  const std::string& run = cfg.command.run;
  bool needs_bounds = run != "validate" && run != "report" && run != "export-dot";
  if (needs_bounds && !cfg.has_bounds)
    throw ConfigError("command '" + run + "' needs a [bounds] section with L");
  if (run == "coe" && !cfg.model2)
    throw ConfigError("command 'coe' needs a [model2] section");
  return cfg;
}

ChainModel build_model(const ModelSpec& spec) {
  auto rename = [&](ChainModel m) {
    if (!spec.name) return m;
    std::vector<ActionLevel> levels;
    for (std::size_t l = 0; l <= m.max_level(); ++l) levels.push_back(m.level(l));
    return ChainModel(m.alphabet(), std::move(levels), *spec.name);
  };
  switch (spec.kind) {
    case ModelSpec::Kind::Odometer:
      return rename(build_odometer(spec.arities));
    case ModelSpec::Kind::Dihedral:
      return rename(build_dihedral(spec.p, spec.depth));
    case ModelSpec::Kind::Heisenberg:
      return rename(build_heisenberg(spec.p, spec.q, spec.depth));
    case ModelSpec::Kind::Grigorchuk:
      return rename(build_grigorchuk(spec.depth));
    case ModelSpec::Kind::Product: {
      auto pair = build_product_toy(spec.order, spec.table1, spec.table2, spec.arities);
      return rename(spec.member == 1 ? std::move(pair.first) : std::move(pair.second));
    }
    case ModelSpec::Kind::Automaton:
      return rename(build_automaton_group(spec.automaton, spec.depth));
    case ModelSpec::Kind::Explicit: {
      GeneratorAlphabet alphabet(spec.generators);
      std::vector<ActionLevel> levels;
      ActionLevel root;
      root.level = 0;
      root.point_count = 1;
      for (std::size_t g = 0; g < spec.generators.size(); ++g)
        root.generator_images.push_back(Permutation::identity(1));
      levels.push_back(std::move(root));
      for (std::size_t l = 1; l <= spec.depth; ++l) {
        const auto& src = spec.explicit_levels[l - 1];
        ActionLevel lev;
        lev.level = l;
        lev.point_count = src.size;
        for (const auto& cycles : src.perms)
          lev.generator_images.push_back(parse_cycles(cycles, src.size));
        if (l == 1)
          lev.projection.assign(src.size, 0);
        else
          lev.projection = src.projection;
        lev.basepoint = src.basepoint;
        levels.push_back(std::move(lev));
      }
      return ChainModel(std::move(alphabet), std::move(levels),
                        spec.name.value_or("explicit"));
    }
  }
  throw InvalidInput("unreachable model kind");
}

std::string explicit_model_config(const ChainModel& m) {
  std::string out = "[model]\n";
  out += "builder = explicit\n";
  out += "name = " + m.name() + "\n";
  out += "generators = ";
  for (std::size_t g = 0; g < m.alphabet().size(); ++g)
    out += (g ? "," : "") + m.alphabet().symbol(g);
  out += "\n";
  out += "depth = " + std::to_string(m.max_level()) + "\n";
  for (std::size_t l = 1; l <= m.max_level(); ++l) {
    std::string tag = std::to_string(l);
    out += "size." + tag + " = " + std::to_string(m.points(l)) + "\n";
    for (std::size_t g = 0; g < m.alphabet().size(); ++g)
      out += "perm." + tag + "." + m.alphabet().symbol(g) + " = " +
             format_cycles(m.level(l).generator_images[g]) + "\n";
    if (l > 1) {
      out += "proj." + tag + " = ";
      for (std::uint32_t x = 0; x < m.points(l); ++x)
        out += (x ? "," : "") + std::to_string(m.project(l, x));
      out += "\n";
    }
    if (m.basepoint(l) != 0)
      out += "basepoint." + tag + " = " + std::to_string(m.basepoint(l)) + "\n";
  }
  return out;
}

}  // namespace cantor

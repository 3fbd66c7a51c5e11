#include <doctest.h>

#include "cantor/dot.hpp"
#include "cantor/gallery.hpp"
#include "oracles.hpp"

using namespace cantor;

TEST_CASE("every builder validates at working depth") {
  CHECK(validate_chain(build_odometer({2, 2, 2, 2})).valid());
  CHECK(validate_chain(build_odometer({2, 3, 2, 3})).valid());
  CHECK(validate_chain(build_dihedral(3, 4)).valid());
  CHECK(validate_chain(build_heisenberg(2, 3, 3)).valid());
  CHECK(validate_chain(build_grigorchuk(4)).valid());
  auto pair = build_product_toy(4, cyclic_table(4), klein_four_table(), {2, 2, 2});
  CHECK(validate_chain(pair.first).valid());
  CHECK(validate_chain(pair.second).valid());
}

TEST_CASE("odometer arithmetic") {
  ChainModel odo = build_odometer({2, 2, 2});
  CHECK(odo.points(3) == 8);
  Word t = parse_word(odo.alphabet(), "t");
  CHECK(odo.level_image(t, 3).order() == 8);
  for (std::size_t l = 0; l <= 3; ++l) CHECK(odo.word_trivial_at(power(t, 1 << l), l));
  CHECK_THROWS_AS(build_odometer({1, 2}), InvalidInput);
}

TEST_CASE("adding machine automaton reproduces the odometer tables") {
  ChainModel odo = build_odometer({2, 2, 2, 2, 2});
  ChainModel machine = build_automaton_group(adding_machine_spec(), 5);
  for (std::size_t l = 0; l <= 5; ++l) {
    CHECK(machine.points(l) == odo.points(l));
    CHECK(machine.level(l).generator_images[0] == odo.level(l).generator_images[0]);
    if (l > 0) CHECK(machine.level(l).projection == odo.level(l).projection);
  }
}

TEST_CASE("dihedral relations") {
  ChainModel d = build_dihedral(3, 3);
  Word t = parse_word(d.alphabet(), "t");
  Word s = parse_word(d.alphabet(), "s");
  for (std::size_t l = 0; l <= 3; ++l) {
    CHECK(d.word_trivial_at(s * s, l));
    CHECK(d.level_image(s * t * s, l) == d.level_image(t.inverse(), l));
  }
  // s fixes exactly the zero residue at each level
  for (std::size_t l = 1; l <= 3; ++l) {
    std::size_t fixed = 0;
    for (std::uint32_t x = 0; x < d.points(l); ++x)
      if (d.apply_word(l, s, x) == x) ++fixed;
    CHECK(fixed == 1);
    CHECK(d.apply_word(l, s, 0) == 0);
  }
}

TEST_CASE("heisenberg sizes match the independent coset oracle") {
  for (auto [p, q] : {std::pair<std::uint32_t, std::uint32_t>{2, 3}, {3, 2}}) {
    ChainModel heis = build_heisenberg(p, q, 2);
    long long pn = 1, qn = 1;
    for (std::size_t n = 1; n <= 2; ++n) {
      pn *= p;
      qn *= q;
      auto reps = oracle::heis_coset_closure(pn, qn);
      CHECK(heis.points(n) == reps.size());
      CHECK(heis.points(n) == static_cast<std::size_t>(pn) * pn * qn);
    }
  }
}

TEST_CASE("heisenberg canonical triples agree with coset equality") {
  // two oracle representatives land on the same model point exactly when
  // they lie in the same coset
  ChainModel heis = build_heisenberg(2, 3, 1);
  auto reps = oracle::heis_coset_closure(2, 3);

  // reach each oracle rep inside the model by replaying its BFS word is
  // overkill; instead check the model's action respects coset equality on
  // generator translates of the basepoint
  Word gens[3] = {parse_word(heis.alphabet(), "X"), parse_word(heis.alphabet(), "Y"),
                  parse_word(heis.alphabet(), "Z")};
  oracle::Triple ogens[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<std::pair<std::uint32_t, oracle::Triple>> frontier{{heis.basepoint(1), {0, 0, 0}}};
  for (int step = 0; step < 3; ++step) {
    std::vector<std::pair<std::uint32_t, oracle::Triple>> next;
    for (auto& [point, rep] : frontier)
      for (int g = 0; g < 3; ++g)
        next.push_back({heis.apply_word(1, gens[g], point), oracle::heis_mul(ogens[g], rep)});
    for (auto& [pt1, rep1] : next)
      for (auto& [pt2, rep2] : next)
        CHECK((pt1 == pt2) == oracle::heis_same_coset(rep1, rep2, 2, 3));
    frontier = std::move(next);
  }
}

TEST_CASE("heisenberg commutator of X and Y acts as Z") {
  ChainModel heis = build_heisenberg(2, 3, 2);
  Word x = parse_word(heis.alphabet(), "X");
  Word y = parse_word(heis.alphabet(), "Y");
  Word z = parse_word(heis.alphabet(), "Z");
  Word commutator = x * y * x.inverse() * y.inverse();
  for (std::size_t l = 0; l <= 2; ++l)
    CHECK(heis.level_image(commutator, l) == heis.level_image(z, l));
  CHECK_THROWS_AS(build_heisenberg(3, 3, 1), InvalidInput);
}

TEST_CASE("grigorchuk levels match the hand-written recursion tables") {
  ChainModel g = build_grigorchuk(3);
  const char* names[4] = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i) {
    Word w = parse_word(g.alphabet(), names[i]);
    CHECK(g.level_image(w, 1).images() == oracle::grigorchuk_level1()[i]);
    CHECK(g.level_image(w, 2).images() == oracle::grigorchuk_level2()[i]);
    CHECK(g.level_image(w, 3).images() == oracle::grigorchuk_level3()[i]);
  }
}

TEST_CASE("grigorchuk involutions and the klein relation") {
  ChainModel g = build_grigorchuk(4);
  for (const char* name : {"a", "b", "c", "d"}) {
    Word w = parse_word(g.alphabet(), name);
    for (std::size_t l = 0; l <= 4; ++l) CHECK(g.word_trivial_at(w * w, l));
  }
  Word bcd = parse_word(g.alphabet(), "b.c.d");
  for (std::size_t l = 0; l <= 4; ++l) CHECK(g.word_trivial_at(bcd, l));
  // d is trivial on the cylinder over 0 and nontrivial from level 3 on
  Word d = parse_word(g.alphabet(), "d");
  CHECK(g.word_trivial_at(d, 2));
  CHECK(!g.word_trivial_at(d, 3));
}

TEST_CASE("automaton rejections") {
  AutomatonSpec identity_only;
  identity_only.arities = {2};
  identity_only.identity_state = "e";
  identity_only.states.push_back(
      {"e", Permutation::identity(2), {"e", "e"}});
  CHECK_THROWS_AS(build_automaton_group(identity_only, 2), InvalidInput);

  // two independent swaps never mix the halves: not transitive
  AutomatonSpec intransitive;
  intransitive.arities = {3};
  intransitive.identity_state = "e";
  intransitive.states.push_back({"s", parse_cycles("(0 1)", 3), {"e", "e", "e"}});
  try {
    build_automaton_group(intransitive, 2);
    FAIL("expected rejection");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("not transitive") != std::string::npos);
    CHECK(std::string(e.what()).find("orbit") != std::string::npos);
  }
}

TEST_CASE("product toys share the tree and differ by exponent") {
  auto [cyclic, klein] = build_product_toy(4, cyclic_table(4), klein_four_table(), {2, 2});
  CHECK(cyclic.max_level() == 3);
  CHECK(cyclic.points(1) == 4);
  CHECK(cyclic.points(3) == 16);
  for (std::size_t l = 1; l <= 3; ++l)
    CHECK(cyclic.level(l).projection == klein.level(l).projection);

  bool cyclic_has_order4 = false, klein_has_order4 = false;
  for (std::size_t g = 0; g < cyclic.alphabet().size(); ++g) {
    if (cyclic.level(1).generator_images[g].order() == 4) cyclic_has_order4 = true;
    if (klein.level(1).generator_images[g].order() == 4) klein_has_order4 = true;
  }
  CHECK(cyclic_has_order4);
  CHECK(!klein_has_order4);

  CHECK_THROWS_AS(build_product_toy(4, cyclic_table(4), klein_four_table(), {1}), InvalidInput);
  auto broken = cyclic_table(4);
  broken[2][1] = 0;  // not a latin square any more
  CHECK_THROWS_AS(build_product_toy(4, broken, klein_four_table(), {2}), InvalidInput);
}

TEST_CASE("identical tables give identical models") {
  auto [one, two] = build_product_toy(4, klein_four_table(), klein_four_table(), {2});
  for (std::size_t l = 0; l <= one.max_level(); ++l) {
    CHECK(one.level(l).generator_images == two.level(l).generator_images);
    CHECK(one.level(l).projection == two.level(l).projection);
  }
}

TEST_CASE("dot export shape") {
  ChainModel odo = build_odometer({2, 2});
  std::string dot = export_tree(odo, 2);
  CHECK(dot.find("digraph") == 0);
  // 1 + 2 + 4 vertices, 6 edges
  std::size_t vertices = 0, edges = 0, pos = 0;
  while ((pos = dot.find('\n', pos)) != std::string::npos) {
    ++pos;
    std::size_t next = dot.find('\n', pos);
    std::string line = dot.substr(pos, next == std::string::npos ? next : next - pos);
    if (line.find("->") != std::string::npos)
      ++edges;
    else if (line.find(':') != std::string::npos)
      ++vertices;
  }
  CHECK(vertices == 7);
  CHECK(edges == 6);

  CHECK(export_tree(odo, 0) == "digraph tree {\n  node [shape=circle];\n  \"0:0\";\n}\n");
  // out-degrees at each level equal the next arity
  for (std::size_t l = 1; l <= 2; ++l)
    for (std::uint32_t parent = 0; parent < odo.points(l - 1); ++parent)
      CHECK(odo.fiber(l, parent).size() == 2);
}

TEST_CASE("deterministic export") {
  ChainModel g = build_grigorchuk(3);
  CHECK(export_tree(g, 3) == export_tree(g, 3));
}

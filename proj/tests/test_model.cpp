#include <doctest.h>

#include <random>

#include "cantor/gallery.hpp"
#include "cantor/model.hpp"

using namespace cantor;

namespace {

SearchLimits bounds(std::size_t L, std::size_t D = 0) {
  SearchLimits limits;
  limits.word_bound = L;
  limits.depth = D;
  return limits;
}

std::vector<Word> words_of(const ChainModel& m, std::initializer_list<const char*> texts) {
  std::vector<Word> out;
  for (const char* t : texts) out.push_back(parse_word(m.alphabet(), t));
  return out;
}

Word random_word(const ChainModel& m, std::mt19937& rng, std::size_t len) {
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < len; ++i)
    letters.push_back(static_cast<Letter>(rng() % m.alphabet().letter_count()));
  return Word(std::move(letters));
}

}  // namespace

TEST_CASE("level image of the 2-adic odometer") {
  ChainModel odo = build_odometer({2, 2, 2});
  Word t = parse_word(odo.alphabet(), "t");

  // +1 mod 4 at level 2 is the 4-cycle
  CHECK(odo.level_image(t, 2) == Permutation({1, 2, 3, 0}));
  CHECK(odo.level_image(Word(), 2).is_identity());
  CHECK(odo.level_image(t.inverse(), 3) == odo.level_image(t, 3).inverse());
}

TEST_CASE("heisenberg z-generator at level 1 has order 2") {
  ChainModel heis = build_heisenberg(2, 3, 2);
  CHECK(heis.points(1) == 12);
  Word z = parse_word(heis.alphabet(), "Z");
  CHECK(heis.level_image(z, 1).order() == 2);
}

TEST_CASE("homomorphism property on random word pairs") {
  std::mt19937 rng(11);
  for (const ChainModel& m : {build_odometer({2, 3, 2}), build_grigorchuk(3)}) {
    for (int trial = 0; trial < 40; ++trial) {
      Word w1 = random_word(m, rng, rng() % 5);
      Word w2 = random_word(m, rng, rng() % 5);
      std::size_t level = rng() % (m.max_level() + 1);
      CHECK(m.level_image(w1 * w2, level) ==
            m.level_image(w1, level) * m.level_image(w2, level));
    }
  }
}

TEST_CASE("projection compatibility on random words") {
  std::mt19937 rng(13);
  ChainModel m = build_grigorchuk(4);
  for (int trial = 0; trial < 40; ++trial) {
    Word w = random_word(m, rng, rng() % 6);
    std::size_t level = 1 + rng() % m.max_level();
    for (std::uint32_t x = 0; x < m.points(level); ++x)
      CHECK(m.project(level, m.apply_word(level, w, x)) ==
            m.apply_word(level - 1, w, m.project(level, x)));
  }
}

TEST_CASE("validate_chain accepts the gallery and pinpoints rigged models") {
  ChainModel odo = build_odometer({2, 2, 2, 2, 2, 2});
  CHECK(validate_chain(odo).valid());

  // reroute one projection edge: equivariance breaks at that level
  {
    std::vector<ActionLevel> levels;
    for (std::size_t l = 0; l <= odo.max_level(); ++l) levels.push_back(odo.level(l));
    std::swap(levels[3].projection[0], levels[3].projection[1]);
    ChainModel rigged(odo.alphabet(), std::move(levels), "rigged");
    auto report = validate_chain(rigged);
    CHECK(!report.valid());
    CHECK(!report.levels[3].equivariant);
    CHECK(report.levels[3].equivariance_witness.has_value());
    // the witness replays: projection of the moved point disagrees
    auto [gen, point] = *report.levels[3].equivariance_witness;
    CHECK(rigged.project(3, rigged.apply_letter(3, plain_letter(gen), point)) !=
          rigged.apply_letter(2, plain_letter(gen), rigged.project(3, point)));
  }

  // level-1 action with two orbits: transitivity fails at level 1
  {
    GeneratorAlphabet ab({"t"});
    std::vector<ActionLevel> levels(2);
    levels[0] = {0, 1, {Permutation::identity(1)}, {}, 0};
    levels[1] = {1, 4, {Permutation({1, 0, 3, 2})}, {0, 0, 0, 0}, 0};
    ChainModel rigged(ab, std::move(levels), "two-orbits");
    auto report = validate_chain(rigged);
    CHECK(!report.levels[1].transitive);
    CHECK(!report.valid());
  }
}

TEST_CASE("stabilizer membership on the odometer") {
  ChainModel odo = build_odometer({2, 2, 2});
  CHECK(!odo.stabilizer_member(parse_word(odo.alphabet(), "t"), 3));
  CHECK(odo.stabilizer_member(power(parse_word(odo.alphabet(), "t"), 8), 3));
  CHECK(odo.stabilizer_member(Word(), 2));
}

TEST_CASE("stabilizer words form a subgroup at each level") {
  ChainModel m = build_grigorchuk(3);
  std::mt19937 rng(17);
  std::vector<Word> members;
  while (members.size() < 8) {
    Word w = random_word(m, rng, 1 + rng() % 4);
    if (m.stabilizer_member(w, 2)) members.push_back(w);
  }
  for (const auto& w1 : members) {
    CHECK(m.stabilizer_member(w1.inverse(), 2));
    for (const auto& w2 : members) CHECK(m.stabilizer_member(w1 * w2, 2));
  }
}

TEST_CASE("kernel words of the 2-adic odometer") {
  ChainModel odo = build_odometer({2, 2, 2, 2, 2, 2});
  auto kernel = kernel_words(odo, 2, bounds(4));
  CHECK(kernel == words_of(odo, {"e", "t.t.t.t", "t^-1.t^-1.t^-1.t^-1"}));
  CHECK(kernel_words(odo, 1, bounds(0)) == words_of(odo, {"e"}));
}

TEST_CASE("kernel words of grigorchuk at level 1 collapse to the involutions") {
  ChainModel g = build_grigorchuk(3);
  auto kernel = kernel_words(g, 1, bounds(1));
  CHECK(kernel == words_of(g, {"e", "b", "c", "d"}));
}

TEST_CASE("kernel chain is descending") {
  ChainModel g = build_grigorchuk(4);
  auto deeper = kernel_words(g, 2, bounds(3));
  auto shallower = kernel_words(g, 1, bounds(3));
  for (const auto& w : deeper)
    CHECK(std::find(shallower.begin(), shallower.end(), w) != shallower.end());
}

TEST_CASE("orbit of a point truncated by word length") {
  ChainModel odo = build_odometer({2, 2, 2});
  CHECK(orbit_of_point(odo, 3, 0, 0) == std::vector<std::uint32_t>{0});
  CHECK(orbit_of_point(odo, 3, 0, 3) == std::vector<std::uint32_t>{0, 1, 2, 3, 5, 6, 7});
  CHECK(orbit_of_point(odo, 3, 0, 8).size() == 8);  // transitivity once L is large
}

TEST_CASE("letters outside the alphabet are rejected") {
  ChainModel odo = build_odometer({2, 2});
  CHECK_THROWS_AS(odo.apply_word(1, Word({std::vector<Letter>{9}}), 0), InvalidInput);
}

TEST_CASE("path points enforce projection compatibility") {
  ChainModel odo = build_odometer({2, 2});
  CHECK_THROWS_AS(make_path_point(odo, {0, 1, 2}), InvalidInput);  // 2 projects to 0
  auto x = make_path_point(odo, {0, 1, 3});
  CHECK(x.depth() == 2);
  CHECK(basepoint_path(odo, 2).coords == std::vector<std::uint32_t>{0, 0, 0});
}

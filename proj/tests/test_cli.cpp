#include <doctest.h>

#include "cantor/runner.hpp"
#include "cantor/textio.hpp"

using namespace cantor;

namespace {

const char* kOdometerFreeness = R"(
[model]
builder = odometer
arities = 2,2,2

[command]
run = freeness

[bounds]
L = 7
D = 3
)";

const char* kGrigorchukLqa = R"(
# grigorchuk, lqa over the whole space
[model]
builder = grigorchuk
depth = 4

[command]
run = lqa
U = 0:0

[bounds]
L = 1
D = 2
)";

}  // namespace

TEST_CASE("minimal odometer config parses") {
  RunConfig cfg = parse_config(kOdometerFreeness);
  CHECK(cfg.model.kind == ModelSpec::Kind::Odometer);
  CHECK(cfg.model.arities == std::vector<std::uint32_t>{2, 2, 2});
  CHECK(cfg.command.run == "freeness");
  CHECK(cfg.bounds.word_bound == 7);
  CHECK(cfg.bounds.depth == 3);
}

TEST_CASE("unknown keys are reported with their line") {
  const char* text = R"([model]
builder = odometer
arities = 2,2
colour = blue

[command]
run = validate
)";
  try {
    parse_config(text);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("colour") != std::string::npos);
    CHECK(msg.find("line 4") != std::string::npos);
  }
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_config("[model]\nbuilder odometer\n");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("x = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[model]\nbuilder = odometer\narities = 2\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_config("[model]\nbuilder = odometer\narities = 2\n[command]\nrun = dance\n"),
      ConfigError);
  // search commands demand bounds
  CHECK_THROWS_AS(
      parse_config("[model]\nbuilder = odometer\narities = 2\n[command]\nrun = freeness\n"),
      ConfigError);
}

TEST_CASE("grigorchuk lqa config parses and runs violated") {
  RunConfig cfg = parse_config(kGrigorchukLqa);
  CHECK(cfg.model.kind == ModelSpec::Kind::Grigorchuk);
  auto outcome = run(cfg);
  CHECK(outcome.exit_code == kExitViolated);
  CHECK(outcome.report.find("verdict: violated") != std::string::npos);
  CHECK(outcome.report.find("word=d") != std::string::npos);
  REQUIRE(outcome.artifact_text.has_value());

  // the emitted witness is accepted by verify against the same config
  auto verify = run_verify(cfg, *outcome.artifact_text);
  CHECK(verify.exit_code == kExitPassed);
}

TEST_CASE("odometer freeness run exits zero") {
  auto outcome = run(parse_config(kOdometerFreeness));
  CHECK(outcome.exit_code == kExitPassed);
  CHECK(outcome.report.find("free-up-to-bounds(L=7, D=3)") != std::string::npos);
  auto verify = run_verify(parse_config(kOdometerFreeness), *outcome.artifact_text);
  CHECK(verify.exit_code == kExitPassed);
}

TEST_CASE("automaton model via state lines") {
  const char* text = R"(
[model]
builder = automaton
arity = 2
depth = 4
identity = e
state a = perm (0 1) sections 0:e 1:a

[command]
run = validate
)";
  RunConfig cfg = parse_config(text);
  ChainModel machine = build_model(cfg.model);
  CHECK(machine.points(4) == 16);
  auto outcome = run(cfg);
  CHECK(outcome.exit_code == kExitPassed);
}

TEST_CASE("explicit model round trip") {
  const char* text = R"(
[model]
builder = explicit
name = toy
generators = t
depth = 2
size.1 = 2
perm.1.t = (0 1)
size.2 = 4
perm.2.t = (0 1 2 3)
proj.2 = 0,1,0,1

[command]
run = validate
)";
  RunConfig cfg = parse_config(text);
  ChainModel m = build_model(cfg.model);
  CHECK(m.name() == "toy");
  CHECK(validate_chain(m).valid());

  // serializing and reparsing reproduces the level data
  std::string emitted = explicit_model_config(m) + "\n[command]\nrun = validate\n";
  ChainModel again = build_model(parse_config(emitted).model);
  for (std::size_t l = 0; l <= m.max_level(); ++l) {
    CHECK(again.level(l).generator_images == m.level(l).generator_images);
    CHECK(again.level(l).projection == m.level(l).projection);
  }
}

TEST_CASE("run is deterministic") {
  for (const char* text : {kOdometerFreeness, kGrigorchukLqa}) {
    auto first = run(parse_config(text));
    auto second = run(parse_config(text));
    CHECK(first.report == second.report);
    CHECK(first.artifact_text == second.artifact_text);
    CHECK(first.exit_code == second.exit_code);
  }
}

TEST_CASE("exceeding the candidate budget is an input error") {
  const char* text = R"(
[model]
builder = grigorchuk
depth = 3

[command]
run = freeness

[bounds]
L = 9
D = 3
budget = 100
)";
  auto outcome = run(parse_config(text));
  CHECK(outcome.exit_code == kExitInputError);
  CHECK(outcome.report.find("cap") != std::string::npos);
}

TEST_CASE("input errors exit three") {
  // valid parse, invalid semantics: U beyond the model depth
  const char* text = R"(
[model]
builder = odometer
arities = 2

[command]
run = lqa
U = 5:0

[bounds]
L = 2
D = 1
)";
  auto outcome = run(parse_config(text));
  CHECK(outcome.exit_code == kExitInputError);
  CHECK(outcome.report.find("error") != std::string::npos);
}

TEST_CASE("report summarizes the model") {
  const char* text = R"(
[model]
builder = heisenberg
p = 2
q = 3
depth = 2

[command]
run = report
)";
  auto outcome = run(parse_config(text));
  CHECK(outcome.exit_code == kExitPassed);
  CHECK(outcome.report.find("generators: X,Y,Z") != std::string::npos);
  CHECK(outcome.report.find("points=144") != std::string::npos);
  CHECK(outcome.report.find("chain-valid: yes") != std::string::npos);
}

TEST_CASE("export-dot goes through the runner") {
  const char* text = R"(
[model]
builder = odometer
arities = 2,2

[command]
run = export-dot
depth = 2

[output]
artifact = odo.dot
)";
  auto outcome = run(parse_config(text));
  CHECK(outcome.exit_code == kExitPassed);
  CHECK(outcome.artifact_name == "odo.dot");
  CHECK(outcome.artifact_text->find("digraph") == 0);
}

TEST_CASE("every emitted artifact is accepted by verify") {
  const char* configs[] = {
      R"([model]
builder = grigorchuk
depth = 4
[command]
run = normality
V = 2:0
U = 1:0
[bounds]
L = 4
D = 4
)",
      R"([model]
builder = grigorchuk
depth = 4
[command]
run = chain-probe
point = 0,0,0,0
depths = 1,2,3
[bounds]
L = 4
)",
      R"([model]
builder = grigorchuk
depth = 4
[command]
run = germ
point = 1,3,7,15
[bounds]
L = 2
)",
      R"([model]
builder = odometer
arities = 2,2,2
[command]
run = return-equiv
U1 = 2:0,2
U2 = 2:0,2
h = identity
[bounds]
L = 4
D = 3
)",
      R"([model]
builder = product
n = 4
table1 = 0,1,2,3;1,2,3,0;2,3,0,1;3,0,1,2
table2 = 0,1,2,3;1,0,3,2;2,3,0,1;3,2,1,0
arities = 2
member = 1
[model2]
builder = product
n = 4
table1 = 0,1,2,3;1,2,3,0;2,3,0,1;3,0,1,2
table2 = 0,1,2,3;1,0,3,2;2,3,0,1;3,2,1,0
arities = 2
member = 2
[command]
run = coe
[bounds]
L = 2
D = 2
)",
      R"([model]
builder = dihedral
p = 3
depth = 3
[command]
run = validate
)",
  };
  for (const char* text : configs) {
    RunConfig cfg = parse_config(text);
    auto outcome = run(cfg);
    REQUIRE(outcome.exit_code != kExitInputError);
    REQUIRE(outcome.artifact_text.has_value());
    auto verify = run_verify(cfg, *outcome.artifact_text);
    CHECK(verify.exit_code == kExitPassed);
  }
}

TEST_CASE("verify rejects a tampered witness") {
  RunConfig cfg = parse_config(kGrigorchukLqa);
  auto outcome = run(cfg);
  REQUIRE(outcome.artifact_text.has_value());
  // swap the witness word for one that does not replay
  std::string tampered = *outcome.artifact_text;
  auto at = tampered.find("\td\t");
  REQUIRE(at != std::string::npos);
  tampered.replace(at, 3, "\ta\t");
  auto verify = run_verify(cfg, tampered);
  CHECK(verify.exit_code == kExitViolated);
}

TEST_CASE("coe config needs model2") {
  CHECK_THROWS_AS(
      parse_config("[model]\nbuilder = odometer\narities = 2\n[command]\nrun = coe\n[bounds]\nL "
                   "= 2\nD = 1\n"),
      ConfigError);
}

TEST_CASE("twist run emits a loadable extended model") {
  const char* text = R"(
[model]
builder = odometer
arities = 2,2,2

[command]
run = twist
U = 1:0
twist.1.from = t.t
twist.1.to = t^-1.t^-1

[bounds]
L = 4
)";
  auto outcome = run(parse_config(text));
  REQUIRE(outcome.exit_code == kExitPassed);
  RunConfig twisted_cfg = parse_config(*outcome.artifact_text);
  ChainModel twisted = build_model(twisted_cfg.model);
  CHECK(twisted.alphabet().size() == 2);
  CHECK(validate_chain(twisted).valid());
}

// Compares the serial reference scans against the OpenMP kernels on the
// heavier searches and reports wall times and agreement.

#include <chrono>
#include <iostream>
#include <string>

#include "cantor/gallery.hpp"
#include "cantor/regularity.hpp"

using namespace cantor;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

SearchLimits limits_for(std::size_t L, std::size_t D, ExecMode exec) {
  SearchLimits limits;
  limits.word_bound = L;
  limits.depth = D;
  limits.budget = 50'000'000;
  limits.exec = exec;
  return limits;
}

struct Row {
  std::string name;
  double serial = 0, parallel = 0;
  bool agree = true;
};

void print(const Row& row) {
  std::cout << row.name << ": serial " << row.serial << "s, parallel " << row.parallel
            << "s, speedup " << (row.parallel > 0 ? row.serial / row.parallel : 0.0)
            << (row.agree ? "" : "  RESULTS DISAGREE") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t word_bound = argc > 1 ? std::stoul(argv[1]) : 7;
  ChainModel g = build_grigorchuk(6);
  std::cout << "model " << g.name() << ", depth " << g.max_level() << ", word bound "
            << word_bound << "\n";

  {
    Row row{"kernel_words(level 4)"};
    auto start = clock_type::now();
    auto serial = kernel_words(g, 4, limits_for(word_bound, 0, ExecMode::Serial));
    row.serial = seconds_since(start);
    start = clock_type::now();
    auto parallel = kernel_words(g, 4, limits_for(word_bound, 0, ExecMode::Parallel));
    row.parallel = seconds_since(start);
    row.agree = serial == parallel;
    print(row);
  }

  {
    Row row{"lqa_violation_search(U=[0], D=4)"};
    Clopen outer = Clopen::cylinder(1, 0);
    auto start = clock_type::now();
    auto serial = lqa_violation_search(g, outer, limits_for(word_bound, 4, ExecMode::Serial));
    row.serial = seconds_since(start);
    start = clock_type::now();
    auto parallel = lqa_violation_search(g, outer, limits_for(word_bound, 4, ExecMode::Parallel));
    row.parallel = seconds_since(start);
    row.agree = serial.violated == parallel.violated &&
                (!serial.violated || (serial.witness->word == parallel.witness->word &&
                                      serial.witness->inner == parallel.witness->inner));
    print(row);
  }

  {
    // the dihedral action is free at truncation, so this scan is exhaustive
    ChainModel d = build_dihedral(3, 5);
    Row row{"freeness(dihedral, D=4)"};
    auto start = clock_type::now();
    auto serial = topological_freeness_check(d, limits_for(word_bound, 4, ExecMode::Serial));
    row.serial = seconds_since(start);
    start = clock_type::now();
    auto parallel = topological_freeness_check(d, limits_for(word_bound, 4, ExecMode::Parallel));
    row.parallel = seconds_since(start);
    row.agree = serial.violated == parallel.violated &&
                (!serial.violated ||
                 (*serial.word == *parallel.word && *serial.cylinder == *parallel.cylinder));
    print(row);
  }

  return 0;
}

#ifndef CANTOR_GALLERY_HPP
#define CANTOR_GALLERY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cantor/model.hpp"

namespace cantor {

// Single generator t acting as +1 on Z/(n_1...n_l) with arithmetic
// projections.
ChainModel build_odometer(const std::vector<std::uint32_t>& arities);

// Generators t: x -> x+1 and s: x -> -x on Z/p^l.
ChainModel build_dihedral(std::uint32_t p, std::size_t depth);

// Discrete Heisenberg group (Z^3 with (x,y,z)*(x',y',z')=(x+x',y+y',z+z'+xy'))
// acting on cosets of the subgroups p^n Z x q^n Z x p^n Z; level n has
// p^(2n) q^n points indexed by canonical triples.
ChainModel build_heisenberg(std::uint32_t p, std::uint32_t q, std::size_t depth);

// Two finite groups of order N given by Cayley tables, each acting by left
// translation on a shared N-point top factor, with a common odometer on the
// second factor.  Returns the pair of models on the same tree.
std::pair<ChainModel, ChainModel> build_product_toy(std::size_t order,
                                                    const std::vector<std::vector<std::uint32_t>>& table1,
                                                    const std::vector<std::vector<std::uint32_t>>& table2,
                                                    const std::vector<std::uint32_t>& arities);

std::vector<std::vector<std::uint32_t>> cyclic_table(std::size_t n);
std::vector<std::vector<std::uint32_t>> klein_four_table();

// Self-similar group given by wreath recursion over a rooted tree alphabet.
struct AutomatonState {
  std::string name;
  Permutation root;                  // permutation of the arity alphabet
  std::vector<std::string> sections;  // state acting below each letter
};

struct AutomatonSpec {
  std::vector<std::uint32_t> arities;  // per tree level
  std::string identity_state;
  std::vector<AutomatonState> states;  // excluding the identity, or listing it trivially
};

// Points of level l are words of length l, first letter least significant:
// index = d1 + n1*(d2 + n2*(...)).  Non-transitive actions are rejected
// with the orbit decomposition in the error message.
ChainModel build_automaton_group(const AutomatonSpec& spec, std::size_t depth,
                                 const std::string& name = "automaton");

// The standard five-state automaton a,b,c,d over the binary tree.
ChainModel build_grigorchuk(std::size_t depth);
AutomatonSpec grigorchuk_spec();
AutomatonSpec adding_machine_spec();

}  // namespace cantor

#endif

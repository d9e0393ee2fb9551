#pragma once

#include <cstdint>
#include <vector>

#include "minrep/cyclotomic.hpp"
#include "minrep/group.hpp"

namespace minrep {

struct ConjugacyPartition {
  std::vector<std::vector<int>> classes;  // each sorted; ordered by least member
  std::vector<int> class_of;              // element -> class index
  std::vector<int> representatives;       // class -> least member
  int count() const { return static_cast<int>(classes.size()); }
};

ConjugacyPartition conjugacy_partition(const Group& g);

// A class function with cyclotomic values, one per conjugacy class in the
// canonical class order of the owning group.
struct Character {
  uint64_t group_hash = 0;
  std::vector<Cyclotomic> values;
  int degree() const;  // value at the identity class; must be a rational integer
};

struct CharacterTable {
  uint64_t group_hash = 0;
  ConjugacyPartition partition;
  std::vector<Character> irreducibles;  // sorted by (degree, coefficient-lex)
};

// Exact table via class-multiplication matrices diagonalized over a prime
// field F_q, q = 1 mod exponent(G), q > 2 sqrt(|G|); values lifted to
// Q(zeta_exponent) through root-of-unity multiplicities.  Orthogonality is
// re-verified exactly before returning.
CharacterTable character_table(const Group& g);

// Memoized by content hash; the reference stays valid for process lifetime.
const CharacterTable& character_table_cached(const Group& g);

Subgroup character_kernel(const Group& g, const Character& chi);
Character induce_character(const Group& g, const Subgroup& h, const Character& chi);
Character restrict_character(const Group& g, const Character& chi, const Subgroup& h);
Cyclotomic inner_product(const Group& g, const Character& a, const Character& b);
bool is_irreducible(const Group& g, const Character& chi);

}  // namespace minrep

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "minrep/character.hpp"

namespace minrep {

inline constexpr int kBruteforceIrreducibleCap = 20;

// rdim(G) with a witness: indices into character_table(G).irreducibles whose
// kernels intersect trivially and whose degree-sum is minimal.
struct RdimCertificate {
  uint64_t group_hash = 0;
  int value = 0;
  std::vector<int> witness;  // sorted ascending; lexicographically least
};

struct MinimalityReport {
  uint64_t group_hash = 0;
  int rdim_g = 0;
  std::vector<std::pair<int, int>> max_subgroup_rdims;  // (order, rdim)
  bool is_minimally_faithful = false;
  int degree = 0;  // = rdim_g when minimally faithful, else 0
};

// Minimum-weight set cover over minimal normal subgroups, solved by branch
// and bound; abelian groups short-circuit to the invariant-factor count.
RdimCertificate rdim(const Group& g);
const RdimCertificate& rdim_cached(const Group& g);

// Independent oracle: exhaustive scan of all 2^k subsets of Irr(G).
RdimCertificate rdim_bruteforce(const Group& g);

// Checks rdim against maximal subgroups only (valid by monotonicity).
MinimalityReport is_minimally_faithful(const Group& g);
const MinimalityReport& is_minimally_faithful_cached(const Group& g);

// Theorem hook: rdim(G x C_n) == rdim(G) whenever gcd(n, |Z(G)|) = 1.
bool scalar_extension_check(const Group& g, int n);

}  // namespace minrep

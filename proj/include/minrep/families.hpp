#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minrep/repdim.hpp"

namespace minrep {

// The classified families.  Degree-2: Q8 and C_p:C_{2^m} (odd p, inversion).
// Degree-3 tags a..k:
//   a: C_p^3                          b: (C_p x C_p) : C_{3^k}, p = -1 mod 3
//   c: C_p : C_{3^k}, p = 1 mod 3     d: C_{3^k} : C_3, k >= 2
//   e: Heisenberg group of order 27   f: Q8 x C_p x C_p, p odd
//   g: (C_{2^k} : C_2) x C_p x C_p    h: (C_q : C_{2^m}) x C_p x C_p
//   i: (C_p : C_{2^m}) x C_2, m > 1   j: Q8 x C_2
//   k: nonabelian 2-groups whose index-2 subgroups are all abelian with two
//      invariant factors (predicate-first; only C4:C4 has a builder)
enum class FamilyTag {
  Deg2Q8,
  Deg2PCyc2m,
  A, B, C, D, E, F, G, H, I, J, K,
};

std::string family_tag_name(FamilyTag t);  // "deg2.q8", "deg2.p-cyc2m", "a".."k"
std::optional<FamilyTag> family_tag_from_name(const std::string& name);
int family_degree(FamilyTag t);  // 2 or 3

struct FamilySpec {
  FamilyTag tag = FamilyTag::A;
  std::map<std::string, int> params;  // keys among p, q, k, m as applicable
  bool operator==(const FamilySpec& o) const = default;
};

std::string family_spec_to_string(const FamilySpec& spec);

// Builds the family member and validates order, center, and (non)abelianness
// against the classification's stated values before returning.
Group construct_family(const FamilySpec& spec);

// True iff G is nonabelian and every index-2 subgroup is abelian with exactly
// two invariant factors.  Requires |G| a power of 2 within the lattice cap.
bool is_family_k_shape(const Group& g);

bool has_only_abelian_proper_subgroups(const Group& g);

// Structure of a nonabelian group all of whose proper subgroups are abelian
// and which is not a p-group: G = Q : C_{p^a} with Q elementary abelian,
// |Q| = 1 mod p and |Z(G)| = p^(a-1) (both asserted).
struct MinimalNonabelianShape {
  int q_rank = 0;  // rank of the elementary abelian normal Sylow subgroup
  int p = 0;       // prime of the cyclic complement
  int a = 0;       // complement order exponent: complement = C_{p^a}
};
std::optional<MinimalNonabelianShape> minimal_nonabelian_shape(const Group& g);

// Structural dispatch on order/Sylow/center invariants proposes candidate
// (tag, params); confirmation by isomorphism against the builder (or the
// shape predicate for tag k).  Two distinct matching tags is a finding.
std::optional<FamilySpec> identify_family(const Group& g);

struct ClassificationVerdict {
  std::string id;  // corpus entry id when known
  uint64_t group_hash = 0;
  int rdim_value = 0;
  bool minimally_faithful = false;  // at the scanned degree
  std::optional<FamilySpec> matched_family;
  bool matched = false;  // family of the scanned degree found (for degree 2
                         // this includes abelian C_p x C_p, which has no tag)
  bool consistent = false;
};

// Checks the biconditional "minimally faithful of this degree <=> member of a
// classified family of this degree" for every corpus group.
std::vector<ClassificationVerdict> verify_classification(const std::vector<Group>& corpus,
                                                         int degree);

// Verdict for one group; factored out so the CLI cache path and
// verify_classification produce identical results.
ClassificationVerdict classification_verdict(const Group& g, int degree,
                                             const std::string& id = "");

}  // namespace minrep

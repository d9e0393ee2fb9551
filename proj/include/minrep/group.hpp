#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minrep/errors.hpp"

namespace minrep {

// Size caps.  Explicit multiplication tables are quadratic in the order and
// full subgroup lattices are join-closures, so both are bounded.
inline constexpr int kTableCap = 2000;
inline constexpr int kLatticeCap = 512;

// A finite group as an explicit multiplication table over element indices
// 0..order-1, identity at index 0.  Immutable once constructed.
class Group {
 public:
  static Group from_mul_table(std::vector<int> table, int order,
                              std::map<std::string, int> labels = {});
  static Group trivial();

  int order() const { return n_; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int conj(int x, int g) const { return mul(mul(x, g), inv(x)); }  // x g x^-1
  int power(int g, long k) const;
  int element_order(int g) const { return elem_order_[g]; }
  int exponent() const { return exponent_; }
  bool is_abelian() const { return abelian_; }
  uint64_t content_hash() const { return hash_; }
  std::string content_hash_hex() const;
  const std::vector<int>& mul_table() const { return mul_; }
  const std::map<std::string, int>& generator_labels() const { return labels_; }

 private:
  Group() = default;
  int n_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<int> elem_order_;
  bool abelian_ = true;
  int exponent_ = 1;
  uint64_t hash_ = 0;
  std::map<std::string, int> labels_;
};

struct Subgroup {
  uint64_t parent_hash = 0;
  std::vector<int> members;  // sorted ascending; always contains 0

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int g) const;
  bool contains_all(const Subgroup& other) const;
  bool operator==(const Subgroup& o) const {
    return parent_hash == o.parent_hash && members == o.members;
  }
};

// Action of H on N for a semidirect product: one generator->image map per
// generator of H.  Keys of each map must generate N; each map must extend to
// an automorphism of N and the whole assignment to a homomorphism H->Aut(N).
struct AutomorphismAction {
  std::vector<int> h_generators;
  std::vector<std::map<int, int>> images;
};

// --- construction ---
Group group_from_permutations(int degree, const std::vector<std::vector<int>>& generators,
                              int cap = kTableCap);
Group cyclic(int n);
Group dihedral(int order);   // order = 2n
Group quaternion8();
Group dicyclic(int order);   // order = 4n, n >= 2; dicyclic(8) == quaternion8()
Group heisenberg27();
Group direct_product(const Group& a, const Group& b);
Group semidirect_product(const Group& n, const Group& h, const AutomorphismAction& action);

// --- subgroups and structure ---
Subgroup whole_group(const Group& g);
Subgroup trivial_subgroup(const Group& g);
Subgroup subgroup_closure(const Group& g, const std::vector<int>& seed);
Group subgroup_as_group(const Group& g, const Subgroup& s);
bool is_subgroup_set(const Group& g, const std::vector<int>& members);
bool is_normal(const Group& g, const Subgroup& s);
Subgroup normal_closure(const Group& g, int x);
Subgroup center(const Group& g);
Subgroup derived_subgroup(const Group& g);
std::vector<Subgroup> derived_series(const Group& g);
Subgroup sylow_subgroup(const Group& g, int p);
std::vector<Subgroup> all_subgroups(const Group& g);
std::vector<Subgroup> maximal_subgroups(const Group& g);
std::vector<Subgroup> minimal_normal_subgroups(const Group& g);

// Invariant factors n1 | n2 | ... of an abelian group, ascending; NotAbelian
// otherwise.  The count equals max_p dim_Fp{g : g^p = 1}.
std::vector<int> abelian_invariant_factors(const Group& g);
int abelian_invariant_factor_count(const Group& g);

// Greedy generating sequence: repeatedly adjoin the least element outside the
// closure so far.  Deterministic; every prefix is irredundant.
std::vector<int> minimal_generating_sequence(const Group& g);

bool is_isomorphic(const Group& a, const Group& b);

// --- arithmetic helpers shared across modules ---
bool is_prime(int n);
std::vector<std::pair<int, int>> factorize(int n);

}  // namespace minrep

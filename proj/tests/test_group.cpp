#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "minrep/group.hpp"

using minrep::Group;
using minrep::Subgroup;

namespace {

// Independent oracles: direct definitional scans, no shared code with the
// library's lattice machinery.
std::vector<int> naive_center(const Group& g) {
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x) {
    bool central = true;
    for (int y = 0; y < g.order() && central; ++y)
      if (g.mul(x, y) != g.mul(y, x)) central = false;
    if (central) out.push_back(x);
  }
  return out;
}

bool naive_is_subgroup(const Group& g, const std::set<int>& s) {
  if (!s.count(0)) return false;
  for (int a : s)
    for (int b : s)
      if (!s.count(g.mul(a, b))) return false;
  return true;
}

// All subgroups by subset enumeration; usable up to order ~16 by restricting
// to divisor-sized subsets.
int naive_subgroup_count(const Group& g) {
  int n = g.order();
  std::set<std::set<int>> found;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;
    std::set<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.insert(i);
    if (n % s.size() != 0) continue;
    if (naive_is_subgroup(g, s)) found.insert(s);
  }
  return static_cast<int>(found.size());
}

Group klein_four() {
  return minrep::direct_product(minrep::cyclic(2), minrep::cyclic(2));
}

int count_of_order(const Group& g, int k) {
  int c = 0;
  for (int x = 0; x < g.order(); ++x)
    if (g.element_order(x) == k) ++c;
  return c;
}

minrep::AutomorphismAction inversion_action(const Group& n) {
  minrep::AutomorphismAction a;
  a.h_generators = {1};
  a.images = {{{1, n.inv(1)}}};
  return a;
}

}  // namespace

TEST_CASE("group_from_permutations") {
  Group c3 = minrep::group_from_permutations(3, {{1, 2, 0}});
  CHECK(c3.order() == 3);
  CHECK(minrep::is_isomorphic(c3, minrep::cyclic(3)));

  Group v4 = minrep::group_from_permutations(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  CHECK(v4.order() == 4);
  CHECK(v4.is_abelian());
  CHECK(v4.exponent() == 2);

  Group d8 = minrep::group_from_permutations(4, {{1, 2, 3, 0}, {1, 0, 3, 2}});
  CHECK(d8.order() == 8);
  CHECK(naive_center(d8).size() == 2);
  CHECK(minrep::is_isomorphic(d8, minrep::dihedral(8)));

  CHECK_THROWS_AS(minrep::group_from_permutations(3, {{0, 0, 1}}), minrep::NonBijective);
  CHECK_THROWS_AS(minrep::group_from_permutations(3, {{1, 2}}), minrep::NonBijective);
  CHECK_THROWS_AS(minrep::group_from_permutations(5, {{1, 2, 3, 4, 0}}, 3),
                  minrep::ClosureExceedsCap);
}

TEST_CASE("named constructions") {
  CHECK(minrep::cyclic(1).order() == 1);
  Group c12 = minrep::cyclic(12);
  CHECK(c12.order() == 12);
  CHECK(c12.is_abelian());
  CHECK(c12.exponent() == 12);
  CHECK(c12.element_order(1) == 12);

  Group q8 = minrep::quaternion8();
  CHECK(q8.order() == 8);
  CHECK(count_of_order(q8, 2) == 1);  // only -1 has order 2
  CHECK(!q8.is_abelian());
  CHECK(q8.exponent() == 4);

  Group d12 = minrep::dihedral(12);
  CHECK(d12.order() == 12);
  CHECK(naive_center(d12).size() == 2);
  CHECK(count_of_order(d12, 2) == 7);

  Group dic = minrep::dicyclic(8);
  CHECK(dic.mul_table() == q8.mul_table());
  CHECK(minrep::dicyclic(12).order() == 12);
  CHECK(count_of_order(minrep::dicyclic(12), 2) == 1);

  Group he = minrep::heisenberg27();
  CHECK(he.order() == 27);
  CHECK(he.exponent() == 3);
  CHECK(naive_center(he).size() == 3);
  CHECK(!he.is_abelian());

  CHECK_THROWS_AS(minrep::dihedral(7), minrep::BadParameter);
  CHECK_THROWS_AS(minrep::dicyclic(6), minrep::BadParameter);
}

TEST_CASE("direct products") {
  Group v4 = klein_four();
  CHECK(v4.is_abelian());
  CHECK(count_of_order(v4, 2) == 3);

  Group q8c2 = minrep::direct_product(minrep::quaternion8(), minrep::cyclic(2));
  CHECK(q8c2.order() == 16);
  std::vector<int> z = naive_center(q8c2);
  CHECK(z.size() == 4);
  for (int x : z) CHECK(q8c2.mul(x, x) == 0);  // center is elementary: C2 x C2

  Group g = minrep::dihedral(10);
  Group same = minrep::direct_product(minrep::cyclic(1), g);
  CHECK(minrep::is_isomorphic(same, g));
}

TEST_CASE("semidirect products") {
  // C7 : C3 with a -> a^2: nonabelian of order 21 with trivial center.
  minrep::AutomorphismAction sq;
  sq.h_generators = {1};
  sq.images = {{{1, 2}}};
  Group f21 = minrep::semidirect_product(minrep::cyclic(7), minrep::cyclic(3), sq);
  CHECK(f21.order() == 21);
  CHECK(!f21.is_abelian());
  CHECK(naive_center(f21).size() == 1);
  Subgroup der = minrep::derived_subgroup(f21);
  CHECK(der.order() == 7);

  Group s3 = minrep::semidirect_product(minrep::cyclic(3), minrep::cyclic(2),
                                        inversion_action(minrep::cyclic(3)));
  CHECK(minrep::is_isomorphic(s3, minrep::dihedral(6)));

  // Trivial action gives the direct-product table elementwise.
  minrep::AutomorphismAction trivial;
  trivial.h_generators = {1};
  trivial.images = {{{1, 1}}};
  Group sd = minrep::semidirect_product(minrep::cyclic(5), minrep::cyclic(4), trivial);
  Group dp = minrep::direct_product(minrep::cyclic(5), minrep::cyclic(4));
  CHECK(sd.mul_table() == dp.mul_table());

  // a -> a^2 is not an automorphism of C4 (not bijective on the subgroup it hits).
  minrep::AutomorphismAction bad;
  bad.h_generators = {1};
  bad.images = {{{1, 2}}};
  CHECK_THROWS_AS(minrep::semidirect_product(minrep::cyclic(4), minrep::cyclic(2), bad),
                  minrep::InvalidAction);
  // Inversion on C5 has order 2, not 3: no homomorphism C3 -> Aut(C5) sends
  // the generator there.
  CHECK_THROWS_AS(minrep::semidirect_product(minrep::cyclic(5), minrep::cyclic(3),
                                             inversion_action(minrep::cyclic(5))),
                  minrep::InvalidAction);
}

TEST_CASE("center and derived series against naive scans") {
  for (const Group& g : {minrep::quaternion8(), minrep::dihedral(8), minrep::dihedral(12),
                         minrep::heisenberg27(), minrep::dicyclic(12),
                         minrep::group_from_permutations(4, {{1, 2, 0, 3}, {0, 2, 3, 1}})}) {
    CHECK(minrep::center(g).members == naive_center(g));
  }
  CHECK(minrep::center(minrep::quaternion8()).order() == 2);

  CHECK(minrep::derived_subgroup(minrep::cyclic(12)).order() == 1);
  CHECK(minrep::derived_subgroup(minrep::dihedral(12)).order() == 3);
  CHECK(minrep::derived_subgroup(minrep::quaternion8()).order() == 2);

  // A4: derived series 12 -> 4 -> 1; the order-4 term is normal.
  Group a4 = minrep::group_from_permutations(4, {{1, 2, 0, 3}, {0, 2, 3, 1}});
  CHECK(a4.order() == 12);
  auto series = minrep::derived_series(a4);
  std::vector<int> orders;
  for (const auto& s : series) orders.push_back(s.order());
  CHECK(orders == std::vector<int>{12, 4, 1});
  CHECK(minrep::is_normal(a4, series[1]));

  // S4: 24 -> 12 -> 4 -> 1.
  Group s4 = minrep::group_from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  CHECK(s4.order() == 24);
  orders.clear();
  for (const auto& s : minrep::derived_series(s4)) orders.push_back(s.order());
  CHECK(orders == std::vector<int>{24, 12, 4, 1});
}

TEST_CASE("subgroup basics") {
  Group s3 = minrep::dihedral(6);
  Subgroup whole = minrep::whole_group(s3);
  CHECK(whole.order() == 6);
  CHECK(minrep::trivial_subgroup(s3).members == std::vector<int>{0});

  Subgroup rot = minrep::subgroup_closure(s3, {1});
  CHECK(rot.order() == 3);
  CHECK(minrep::is_normal(s3, rot));
  Subgroup refl = minrep::subgroup_closure(s3, {3});
  CHECK(refl.order() == 2);
  CHECK(!minrep::is_normal(s3, refl));
  CHECK(minrep::normal_closure(s3, 3).order() == 6);

  Group rot_grp = minrep::subgroup_as_group(s3, rot);
  CHECK(minrep::is_isomorphic(rot_grp, minrep::cyclic(3)));

  CHECK(minrep::is_subgroup_set(s3, {0, 1, 2}));
  CHECK(!minrep::is_subgroup_set(s3, {0, 1}));
  CHECK(!minrep::is_subgroup_set(s3, {1, 2}));

  // Lagrange on every subgroup of a few groups.
  for (const Group& g : {s3, minrep::quaternion8(), minrep::dihedral(16)}) {
    for (const Subgroup& h : minrep::all_subgroups(g)) CHECK(g.order() % h.order() == 0);
  }
}

TEST_CASE("sylow subgroups") {
  Group s3 = minrep::dihedral(6);
  CHECK(minrep::sylow_subgroup(s3, 3).order() == 3);
  CHECK(minrep::sylow_subgroup(s3, 2).order() == 2);
  CHECK(minrep::sylow_subgroup(minrep::cyclic(5), 2).order() == 1);

  Group q8c3 = minrep::direct_product(minrep::quaternion8(), minrep::cyclic(3));
  Subgroup syl = minrep::sylow_subgroup(q8c3, 2);
  CHECK(syl.order() == 8);
  CHECK(minrep::is_isomorphic(minrep::subgroup_as_group(q8c3, syl), minrep::quaternion8()));

  Group s4 = minrep::group_from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  CHECK(minrep::sylow_subgroup(s4, 2).order() == 8);
  CHECK(minrep::sylow_subgroup(s4, 3).order() == 3);
  CHECK_THROWS_AS(minrep::sylow_subgroup(s4, 6), minrep::BadParameter);
}

TEST_CASE("subgroup lattice counts against subset oracle") {
  std::vector<std::pair<Group, int>> cases;
  cases.emplace_back(minrep::cyclic(6), 4);
  cases.emplace_back(minrep::dihedral(6), 6);
  cases.emplace_back(minrep::dihedral(8), 10);
  cases.emplace_back(minrep::quaternion8(), 6);
  cases.emplace_back(minrep::direct_product(klein_four(), minrep::cyclic(2)), 16);
  cases.emplace_back(minrep::group_from_permutations(4, {{1, 2, 0, 3}, {0, 2, 3, 1}}), 10);
  cases.emplace_back(minrep::cyclic(12), 6);
  for (const auto& [g, expected] : cases) {
    auto subs = minrep::all_subgroups(g);
    CHECK(static_cast<int>(subs.size()) == expected);
    CHECK(naive_subgroup_count(g) == expected);
    // Join closure: the closure of the union of any two is again in the list.
    for (const auto& a : subs)
      for (const auto& b : subs) {
        std::vector<int> seed = a.members;
        seed.insert(seed.end(), b.members.begin(), b.members.end());
        Subgroup join = minrep::subgroup_closure(g, seed);
        CHECK(std::count(subs.begin(), subs.end(), join) == 1);
      }
  }
}

TEST_CASE("maximal and minimal normal subgroups") {
  auto q8max = minrep::maximal_subgroups(minrep::quaternion8());
  CHECK(q8max.size() == 3);
  for (const auto& h : q8max) {
    CHECK(h.order() == 4);
    CHECK(minrep::is_isomorphic(minrep::subgroup_as_group(minrep::quaternion8(), h),
                                minrep::cyclic(4)));
  }

  Group a4 = minrep::group_from_permutations(4, {{1, 2, 0, 3}, {0, 2, 3, 1}});
  auto a4min = minrep::minimal_normal_subgroups(a4);
  REQUIRE(a4min.size() == 1);
  CHECK(a4min[0].order() == 4);
  auto a4max = minrep::maximal_subgroups(a4);
  CHECK(a4max.size() == 5);  // four C3 and one V4

  auto s3min = minrep::minimal_normal_subgroups(minrep::dihedral(6));
  REQUIRE(s3min.size() == 1);
  CHECK(s3min[0].order() == 3);

  auto v4min = minrep::minimal_normal_subgroups(klein_four());
  CHECK(v4min.size() == 3);

  auto q8min = minrep::minimal_normal_subgroups(minrep::quaternion8());
  REQUIRE(q8min.size() == 1);
  CHECK(q8min[0].order() == 2);
}

TEST_CASE("abelian invariant factors") {
  CHECK(minrep::abelian_invariant_factors(minrep::cyclic(12)) == std::vector<int>{12});
  CHECK(minrep::abelian_invariant_factor_count(minrep::cyclic(12)) == 1);

  Group c2c6 = minrep::direct_product(minrep::cyclic(2), minrep::cyclic(6));
  CHECK(minrep::abelian_invariant_factors(c2c6) == std::vector<int>{2, 6});

  Group e8 = minrep::direct_product(klein_four(), minrep::cyclic(2));
  CHECK(minrep::abelian_invariant_factors(e8) == std::vector<int>{2, 2, 2});
  CHECK(minrep::abelian_invariant_factor_count(e8) == 3);

  Group mixed = minrep::direct_product(minrep::direct_product(minrep::cyclic(2), minrep::cyclic(4)),
                                       minrep::cyclic(3));
  CHECK(minrep::abelian_invariant_factors(mixed) == std::vector<int>{2, 12});
  CHECK(minrep::abelian_invariant_factor_count(mixed) == 2);

  Group c6c10 = minrep::direct_product(minrep::cyclic(6), minrep::cyclic(10));
  CHECK(minrep::abelian_invariant_factors(c6c10) == std::vector<int>{2, 30});

  CHECK_THROWS_AS(minrep::abelian_invariant_factors(minrep::dihedral(6)), minrep::NotAbelian);
}

TEST_CASE("minimal generating sequence") {
  CHECK(minrep::minimal_generating_sequence(minrep::cyclic(9)) == std::vector<int>{1});
  CHECK(minrep::minimal_generating_sequence(Group::trivial()).empty());
  CHECK(minrep::minimal_generating_sequence(klein_four()).size() == 2);
  CHECK(minrep::minimal_generating_sequence(minrep::quaternion8()).size() == 2);
  // Every prefix is irredundant and the whole sequence generates.
  Group g = minrep::dihedral(16);
  auto seq = minrep::minimal_generating_sequence(g);
  CHECK(minrep::subgroup_closure(g, seq).order() == g.order());
  for (size_t i = 0; i < seq.size(); ++i) {
    std::vector<int> prefix(seq.begin(), seq.begin() + i);
    CHECK(minrep::subgroup_closure(g, prefix).order() < g.order());
  }
}

TEST_CASE("isomorphism testing") {
  CHECK(!minrep::is_isomorphic(minrep::dihedral(8), minrep::quaternion8()));
  CHECK(!minrep::is_isomorphic(minrep::cyclic(4), klein_four()));
  CHECK(!minrep::is_isomorphic(minrep::dihedral(12), minrep::dicyclic(12)));
  CHECK(!minrep::is_isomorphic(minrep::dihedral(12), minrep::cyclic(12)));
  CHECK(!minrep::is_isomorphic(
      minrep::direct_product(minrep::cyclic(4), minrep::cyclic(4)),
      minrep::direct_product(minrep::cyclic(2), minrep::cyclic(8))));

  // Same group through different realizations.
  CHECK(minrep::is_isomorphic(minrep::dihedral(6), minrep::dihedral(6)));
  CHECK(minrep::is_isomorphic(minrep::group_from_permutations(6, {{1, 2, 3, 4, 5, 0}}),
                              minrep::direct_product(minrep::cyclic(2), minrep::cyclic(3))));
  CHECK(minrep::is_isomorphic(
      minrep::group_from_permutations(8, {{1, 2, 3, 0, 5, 6, 7, 4}, {4, 7, 6, 5, 2, 1, 0, 3}}),
      minrep::quaternion8()));

  // Symmetric on a sampled pair, transitive on a sampled triple.
  Group a = minrep::dihedral(10);
  Group b = minrep::semidirect_product(minrep::cyclic(5), minrep::cyclic(2),
                                       inversion_action(minrep::cyclic(5)));
  Group c = minrep::group_from_permutations(5, {{1, 2, 3, 4, 0}, {0, 4, 3, 2, 1}});
  CHECK(minrep::is_isomorphic(a, b));
  CHECK(minrep::is_isomorphic(b, a));
  CHECK(minrep::is_isomorphic(b, c));
  CHECK(minrep::is_isomorphic(a, c));
}

TEST_CASE("element arithmetic and hashing") {
  Group g = minrep::dicyclic(12);
  for (int x = 0; x < g.order(); ++x) {
    CHECK(g.mul(x, g.inv(x)) == 0);
    CHECK(g.mul(g.inv(x), x) == 0);
    CHECK(g.power(x, g.element_order(x)) == 0);
    CHECK(g.power(x, -1) == g.inv(x));
    CHECK(g.power(x, 7) == g.mul(x, g.mul(x, g.mul(x, g.mul(x, g.mul(x, g.mul(x, x)))))));
  }
  CHECK(g.power(0, 0) == 0);

  // content_hash is a pure function of the table.
  Group again = Group::from_mul_table(g.mul_table(), g.order());
  CHECK(again.content_hash() == g.content_hash());
  CHECK(g.content_hash_hex().size() == 16);
  CHECK(minrep::cyclic(6).content_hash() != minrep::dihedral(6).content_hash());

  CHECK_THROWS_AS(Group::from_mul_table({0, 0, 0, 0}, 2), minrep::BadParameter);
}

TEST_CASE("arithmetic helpers") {
  CHECK(minrep::is_prime(2));
  CHECK(minrep::is_prime(97));
  CHECK(!minrep::is_prime(1));
  CHECK(!minrep::is_prime(91));
  using PF = std::vector<std::pair<int, int>>;
  CHECK(minrep::factorize(1) == PF{});
  CHECK(minrep::factorize(12) == PF{{2, 2}, {3, 1}});
  CHECK(minrep::factorize(200) == PF{{2, 3}, {5, 2}});
}

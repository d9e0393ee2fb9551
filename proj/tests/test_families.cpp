#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "minrep/corpus.hpp"
#include "minrep/families.hpp"
#include "minrep/repdim.hpp"

using minrep::FamilySpec;
using minrep::FamilyTag;
using minrep::Group;

namespace {

FamilySpec spec(FamilyTag tag, std::map<std::string, int> params = {}) {
  FamilySpec s;
  s.tag = tag;
  s.params = std::move(params);
  return s;
}

Group corpus_group(const std::string& id) {
  for (const minrep::CorpusEntry& e : minrep::bundled_corpus())
    if (e.id == id) return minrep::group_from_entry(e);
  throw std::runtime_error("missing corpus id " + id);
}

// All parameter choices of a tag with order <= limit, mirroring each family's
// stated constraints.
std::vector<FamilySpec> grid(FamilyTag tag, int limit) {
  std::vector<FamilySpec> out;
  auto odd_primes = [&](int cap) {
    std::vector<int> ps;
    for (int p = 3; p <= cap; p += 2)
      if (minrep::is_prime(p)) ps.push_back(p);
    return ps;
  };
  switch (tag) {
    case FamilyTag::Deg2Q8:
    case FamilyTag::E:
    case FamilyTag::J:
    case FamilyTag::K:
      out.push_back(spec(tag));
      break;
    case FamilyTag::Deg2PCyc2m:
      for (int p : odd_primes(limit))
        for (int m = 1; p * (1 << m) <= limit; ++m)
          out.push_back(spec(tag, {{"p", p}, {"m", m}}));
      break;
    case FamilyTag::A:
      for (int p = 2; p * p * p <= limit; ++p)
        if (minrep::is_prime(p)) out.push_back(spec(tag, {{"p", p}}));
      break;
    case FamilyTag::B:
      for (int p = 2; 3L * p * p <= limit; ++p) {
        if (!minrep::is_prime(p) || p % 3 != 2) continue;
        int k = 1;
        for (long o = 3L * p * p; o <= limit; o *= 3, ++k)
          out.push_back(spec(tag, {{"p", p}, {"k", k}}));
      }
      break;
    case FamilyTag::C:
      for (int p = 7; p * 3 <= limit; ++p) {
        if (!minrep::is_prime(p) || p % 3 != 1) continue;
        int k = 1;
        for (long o = 3L * p; o <= limit; o *= 3, ++k)
          out.push_back(spec(tag, {{"p", p}, {"k", k}}));
      }
      break;
    case FamilyTag::D:
      for (int k = 2;; ++k) {
        long order = 1;
        for (int i = 0; i <= k; ++i) order *= 3;  // 3^(k+1)
        if (order > limit) break;
        out.push_back(spec(tag, {{"k", k}}));
      }
      break;
    case FamilyTag::F:
      for (int p : odd_primes(limit))
        if (8L * p * p <= limit) out.push_back(spec(tag, {{"p", p}}));
      break;
    case FamilyTag::G:
      for (int k = 2; (1L << (k + 1)) * 9 <= limit; ++k)
        for (int p : odd_primes(limit))
          if ((1L << (k + 1)) * p * p <= limit)
            out.push_back(spec(tag, {{"k", k}, {"p", p}}));
      break;
    case FamilyTag::H:
      for (int q : odd_primes(limit))
        for (int m = 1; q * (1L << m) * 9 <= limit; ++m)
          for (int p : odd_primes(limit))
            if (p != q && q * (1L << m) * p * p <= limit)
              out.push_back(spec(tag, {{"q", q}, {"m", m}, {"p", p}}));
      break;
    case FamilyTag::I:
      for (int p : odd_primes(limit))
        for (int m = 2; p * (1L << (m + 1)) <= limit; ++m)
          out.push_back(spec(tag, {{"p", p}, {"m", m}}));
      break;
  }
  return out;
}

}  // namespace

TEST_CASE("tag names and degrees") {
  std::vector<std::pair<FamilyTag, std::string>> names = {
      {FamilyTag::Deg2Q8, "deg2.q8"}, {FamilyTag::Deg2PCyc2m, "deg2.p-cyc2m"},
      {FamilyTag::A, "a"}, {FamilyTag::B, "b"}, {FamilyTag::C, "c"}, {FamilyTag::D, "d"},
      {FamilyTag::E, "e"}, {FamilyTag::F, "f"}, {FamilyTag::G, "g"}, {FamilyTag::H, "h"},
      {FamilyTag::I, "i"}, {FamilyTag::J, "j"}, {FamilyTag::K, "k"}};
  for (auto& [tag, name] : names) {
    CHECK(minrep::family_tag_name(tag) == name);
    REQUIRE(minrep::family_tag_from_name(name).has_value());
    CHECK(*minrep::family_tag_from_name(name) == tag);
    CHECK(minrep::family_degree(tag) == (name.rfind("deg2", 0) == 0 ? 2 : 3));
  }
  CHECK(!minrep::family_tag_from_name("z").has_value());
  CHECK(!minrep::family_tag_from_name("").has_value());

  CHECK(minrep::family_spec_to_string(spec(FamilyTag::B, {{"p", 2}, {"k", 1}})) == "b(k=1,p=2)");
  CHECK(minrep::family_spec_to_string(spec(FamilyTag::J)) == "j");
}

TEST_CASE("builders produce the stated groups") {
  Group b21 = minrep::construct_family(spec(FamilyTag::B, {{"p", 2}, {"k", 1}}));
  CHECK(b21.order() == 12);
  CHECK(minrep::is_isomorphic(
      b21, minrep::group_from_permutations(4, {{1, 2, 0, 3}, {0, 2, 3, 1}})));  // A4

  Group c21 = minrep::construct_family(spec(FamilyTag::C, {{"p", 7}, {"k", 1}}));
  CHECK(c21.order() == 21);
  CHECK(minrep::center(c21).order() == 1);

  Group d27 = minrep::construct_family(spec(FamilyTag::D, {{"k", 2}}));
  CHECK(d27.order() == 27);
  CHECK(minrep::center(d27).order() == 3);
  CHECK(d27.exponent() == 9);
  CHECK(!minrep::is_isomorphic(d27, minrep::heisenberg27()));

  Group e27 = minrep::construct_family(spec(FamilyTag::E));
  CHECK(minrep::is_isomorphic(e27, minrep::heisenberg27()));
  CHECK(e27.exponent() == 3);

  Group i24 = minrep::construct_family(spec(FamilyTag::I, {{"p", 3}, {"m", 2}}));
  CHECK(i24.order() == 24);
  CHECK(minrep::center(i24).order() == 4);
  for (int z : minrep::center(i24).members) CHECK(i24.mul(z, z) == 0);  // C2 x C2

  Group a27 = minrep::construct_family(spec(FamilyTag::A, {{"p", 3}}));
  CHECK(a27.order() == 27);
  CHECK(a27.is_abelian());
  CHECK(minrep::abelian_invariant_factors(a27) == std::vector<int>{3, 3, 3});

  CHECK(minrep::construct_family(spec(FamilyTag::F, {{"p", 3}})).order() == 72);
  CHECK(minrep::construct_family(spec(FamilyTag::G, {{"k", 2}, {"p", 3}})).order() == 72);
  Group h150 =
      minrep::construct_family(spec(FamilyTag::H, {{"q", 3}, {"m", 1}, {"p", 5}}));
  CHECK(h150.order() == 150);
  CHECK(minrep::center(h150).order() == 25);

  Group j16 = minrep::construct_family(spec(FamilyTag::J));
  CHECK(j16.order() == 16);
  CHECK(minrep::is_isomorphic(
      j16, minrep::direct_product(minrep::quaternion8(), minrep::cyclic(2))));

  Group k16 = minrep::construct_family(spec(FamilyTag::K));
  CHECK(k16.order() == 16);
  CHECK(!k16.is_abelian());

  CHECK(minrep::is_isomorphic(minrep::construct_family(spec(FamilyTag::Deg2Q8)),
                              minrep::quaternion8()));
  Group pc = minrep::construct_family(spec(FamilyTag::Deg2PCyc2m, {{"p", 5}, {"m", 2}}));
  CHECK(minrep::is_isomorphic(pc, minrep::dicyclic(20)));
  CHECK(minrep::is_isomorphic(
      minrep::construct_family(spec(FamilyTag::Deg2PCyc2m, {{"p", 3}, {"m", 1}})),
      minrep::dihedral(6)));
}

TEST_CASE("parameter constraints are enforced") {
  using PCV = minrep::ParameterConstraintViolated;
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::A, {{"p", 4}})), PCV);
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::A, {})), PCV);
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::A, {{"p", 3}, {"k", 1}})), PCV);
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::B, {{"p", 7}, {"k", 1}})), PCV);
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::C, {{"p", 5}, {"k", 1}})), PCV);
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::C, {{"p", 7}, {"k", 0}})), PCV);
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::D, {{"k", 1}})), PCV);
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::F, {{"p", 2}})), PCV);
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::G, {{"k", 1}, {"p", 3}})), PCV);
  CHECK_THROWS_AS(
      minrep::construct_family(spec(FamilyTag::H, {{"q", 3}, {"m", 1}, {"p", 3}})), PCV);
  CHECK_THROWS_AS(
      minrep::construct_family(spec(FamilyTag::H, {{"q", 2}, {"m", 1}, {"p", 3}})), PCV);
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::I, {{"p", 3}, {"m", 1}})), PCV);
  CHECK_THROWS_AS(minrep::construct_family(spec(FamilyTag::J, {{"p", 3}})), PCV);
  CHECK_THROWS_AS(
      minrep::construct_family(spec(FamilyTag::Deg2PCyc2m, {{"p", 2}, {"m", 2}})), PCV);
}

TEST_CASE("family k shape predicate") {
  CHECK(minrep::is_family_k_shape(minrep::construct_family(spec(FamilyTag::K))));
  CHECK(!minrep::is_family_k_shape(minrep::quaternion8()));
  CHECK(!minrep::is_family_k_shape(minrep::dihedral(8)));
  CHECK(!minrep::is_family_k_shape(minrep::cyclic(16)));
  CHECK(minrep::is_family_k_shape(corpus_group("c8:c4")));
  CHECK(!minrep::is_family_k_shape(corpus_group("q8xc4")));
  CHECK_THROWS_AS(minrep::is_family_k_shape(minrep::dihedral(6)), minrep::NotA2Group);
}

TEST_CASE("minimal nonabelian structure") {
  Group a4 = corpus_group("a4");
  CHECK(minrep::has_only_abelian_proper_subgroups(a4));
  auto shape = minrep::minimal_nonabelian_shape(a4);
  REQUIRE(shape.has_value());
  CHECK(shape->q_rank == 2);
  CHECK(shape->p == 3);
  CHECK(shape->a == 1);

  Group s4 = corpus_group("s4");
  CHECK(!minrep::has_only_abelian_proper_subgroups(s4));
  CHECK(!minrep::minimal_nonabelian_shape(s4).has_value());

  CHECK(minrep::has_only_abelian_proper_subgroups(minrep::quaternion8()));
  CHECK(!minrep::minimal_nonabelian_shape(minrep::quaternion8()).has_value());  // p-group

  auto dic3 = minrep::minimal_nonabelian_shape(corpus_group("dic3"));
  REQUIRE(dic3.has_value());
  CHECK(dic3->q_rank == 1);
  CHECK(dic3->p == 2);
  CHECK(dic3->a == 2);

  auto s3 = minrep::minimal_nonabelian_shape(minrep::dihedral(6));
  REQUIRE(s3.has_value());
  CHECK(s3->q_rank == 1);
  CHECK(s3->p == 2);
  CHECK(s3->a == 1);

  auto f21 = minrep::minimal_nonabelian_shape(corpus_group("c7:c3"));
  REQUIRE(f21.has_value());
  CHECK(f21->q_rank == 1);
  CHECK(f21->p == 3);
  CHECK(f21->a == 1);
}

TEST_CASE("identify_family") {
  auto a4id = minrep::identify_family(corpus_group("a4"));
  REQUIRE(a4id.has_value());
  CHECK(*a4id == spec(FamilyTag::B, {{"p", 2}, {"k", 1}}));

  auto f21 = minrep::identify_family(corpus_group("c7:c3"));
  REQUIRE(f21.has_value());
  CHECK(*f21 == spec(FamilyTag::C, {{"p", 7}, {"k", 1}}));

  Group c5cube = minrep::direct_product(
      minrep::direct_product(minrep::cyclic(5), minrep::cyclic(5)), minrep::cyclic(5));
  auto aid = minrep::identify_family(c5cube);
  REQUIRE(aid.has_value());
  CHECK(*aid == spec(FamilyTag::A, {{"p", 5}}));

  CHECK(!minrep::identify_family(minrep::dihedral(8)).has_value());
  CHECK(!minrep::identify_family(minrep::cyclic(12)).has_value());
  CHECK(!minrep::identify_family(corpus_group("s4")).has_value());
  CHECK(!minrep::identify_family(corpus_group("sl23")).has_value());
  CHECK(!minrep::identify_family(corpus_group("c3xc3")).has_value());  // tagless family

  auto q8 = minrep::identify_family(minrep::quaternion8());
  REQUIRE(q8.has_value());
  CHECK(*q8 == spec(FamilyTag::Deg2Q8));

  auto d10 = minrep::identify_family(minrep::dihedral(10));
  REQUIRE(d10.has_value());
  CHECK(*d10 == spec(FamilyTag::Deg2PCyc2m, {{"p", 5}, {"m", 1}}));

  auto k = minrep::identify_family(corpus_group("c8:c4"));
  REQUIRE(k.has_value());
  CHECK(k->tag == FamilyTag::K);

  auto he = minrep::identify_family(minrep::heisenberg27());
  REQUIRE(he.has_value());
  CHECK(*he == spec(FamilyTag::E));

  auto m27 = minrep::identify_family(corpus_group("m27"));
  REQUIRE(m27.has_value());
  CHECK(*m27 == spec(FamilyTag::D, {{"k", 2}}));

  auto j = minrep::identify_family(corpus_group("q8xc2"));
  REQUIRE(j.has_value());
  CHECK(*j == spec(FamilyTag::J));

  auto i = minrep::identify_family(corpus_group("c2xdic3"));
  REQUIRE(i.has_value());
  CHECK(*i == spec(FamilyTag::I, {{"p", 3}, {"m", 2}}));
}

TEST_CASE("classification verdicts on fixed-order corpora") {
  auto groups_of_order = [&](int n) {
    std::vector<Group> out;
    for (const minrep::CorpusEntry& e : minrep::bundled_corpus()) {
      Group g = minrep::group_from_entry(e);
      if (g.order() == n) out.push_back(g);
    }
    return out;
  };

  // Order 8 at degree 2: exactly Q8.
  std::vector<Group> o8 = groups_of_order(8);
  REQUIRE(o8.size() == 5);
  auto v8 = minrep::verify_classification(o8, 2);
  int mf = 0;
  for (const auto& v : v8) {
    CHECK(v.consistent);
    if (v.minimally_faithful) {
      ++mf;
      CHECK(v.rdim_value == 2);
      REQUIRE(v.matched_family.has_value());
      CHECK(v.matched_family->tag == FamilyTag::Deg2Q8);
    }
  }
  CHECK(mf == 1);

  // Order 12 at degree 3: exactly A4.
  std::vector<Group> o12 = groups_of_order(12);
  REQUIRE(o12.size() == 5);
  auto v12 = minrep::verify_classification(o12, 3);
  mf = 0;
  for (const auto& v : v12) {
    CHECK(v.consistent);
    if (v.minimally_faithful) {
      ++mf;
      REQUIRE(v.matched_family.has_value());
      CHECK(v.matched_family->tag == FamilyTag::B);
    }
  }
  CHECK(mf == 1);

  // Order 27 at degree 3: the elementary abelian, Heisenberg, and modular groups.
  std::vector<Group> o27 = groups_of_order(27);
  REQUIRE(o27.size() == 5);
  auto v27 = minrep::verify_classification(o27, 3);
  std::multiset<FamilyTag> tags;
  for (const auto& v : v27) {
    CHECK(v.consistent);
    if (v.minimally_faithful) {
      REQUIRE(v.matched_family.has_value());
      tags.insert(v.matched_family->tag);
    }
  }
  CHECK(tags == std::multiset<FamilyTag>{FamilyTag::A, FamilyTag::D, FamilyTag::E});

  CHECK_THROWS_AS(minrep::classification_verdict(minrep::quaternion8(), 4),
                  minrep::BadParameter);
}

TEST_CASE("forward sweep: every family instance of order <= 200 is minimally faithful") {
  std::vector<FamilyTag> all_tags = {
      FamilyTag::Deg2Q8, FamilyTag::Deg2PCyc2m, FamilyTag::A, FamilyTag::B,
      FamilyTag::C,      FamilyTag::D,          FamilyTag::E, FamilyTag::F,
      FamilyTag::G,      FamilyTag::H,          FamilyTag::I, FamilyTag::J,
      FamilyTag::K};
  int instances = 0;
  for (FamilyTag tag : all_tags) {
    for (const FamilySpec& s : grid(tag, 200)) {
      Group g = minrep::construct_family(s);
      REQUIRE(g.order() <= 200);
      ++instances;

      minrep::MinimalityReport report = minrep::is_minimally_faithful(g);
      CHECK(report.is_minimally_faithful);
      CHECK(report.degree == minrep::family_degree(tag));

      auto back = minrep::identify_family(g);
      REQUIRE(back.has_value());
      CHECK(*back == s);

      // Families b, c, d state center C_{3^(k-1)}.
      if (tag == FamilyTag::B || tag == FamilyTag::C || tag == FamilyTag::D) {
        int k = s.params.at("k");
        int expect = 1;
        for (int i = 1; i < k; ++i) expect *= 3;
        CHECK(minrep::center(g).order() == expect);
      }
    }
  }
  CHECK(instances >= 60);
}

#include "minrep/families.hpp"

#include <algorithm>
#include <sstream>

namespace minrep {
namespace {

long long int_pow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterConstraintViolated(what);
}

void require_keys(const FamilySpec& spec, std::initializer_list<const char*> keys) {
  if (spec.params.size() != keys.size())
    throw ParameterConstraintViolated("family " + family_tag_name(spec.tag) + " takes exactly " +
                                      std::to_string(keys.size()) + " parameters");
  for (const char* k : keys)
    if (!spec.params.count(k))
      throw ParameterConstraintViolated("family " + family_tag_name(spec.tag) +
                                        " needs parameter " + k);
}

// C_n with the generator of C_h acting as x -> x^r.
Group cyclic_twist(int n, int h, int r) {
  AutomorphismAction act;
  act.h_generators = {1};
  act.images = {{{1, r % n}}};
  return semidirect_product(cyclic(n), cyclic(h), act);
}

// (C_p x C_p) : C_{3^k} through the order-3 map a -> b, b -> (ab)^-1.
Group two_dim_triality(int p, int k) {
  Group n = direct_product(cyclic(p), cyclic(p));
  int a = p;      // (1, 0)
  int b = 1;      // (0, 1)
  int ab_inv = (p - 1) * p + (p - 1);
  AutomorphismAction act;
  act.h_generators = {1};
  act.images = {{{a, b}, {b, ab_inv}}};
  return semidirect_product(n, cyclic(int_pow(3, k)), act);
}

void validate_family(const Group& g, long long order, int center_order, bool abelian,
                     const FamilySpec& spec) {
  if (g.order() != order)
    throw InternalVerificationFailed("family " + family_spec_to_string(spec) +
                                     " has unexpected order " + std::to_string(g.order()));
  if (g.is_abelian() != abelian)
    throw InternalVerificationFailed("family " + family_spec_to_string(spec) +
                                     " has unexpected commutativity");
  if (center(g).order() != center_order)
    throw InternalVerificationFailed("family " + family_spec_to_string(spec) +
                                     " has unexpected center order " +
                                     std::to_string(center(g).order()));
}

}  // namespace

std::string family_tag_name(FamilyTag t) {
  switch (t) {
    case FamilyTag::Deg2Q8: return "deg2.q8";
    case FamilyTag::Deg2PCyc2m: return "deg2.p-cyc2m";
    case FamilyTag::A: return "a";
    case FamilyTag::B: return "b";
    case FamilyTag::C: return "c";
    case FamilyTag::D: return "d";
    case FamilyTag::E: return "e";
    case FamilyTag::F: return "f";
    case FamilyTag::G: return "g";
    case FamilyTag::H: return "h";
    case FamilyTag::I: return "i";
    case FamilyTag::J: return "j";
    case FamilyTag::K: return "k";
  }
  throw BadParameter("unknown family tag");
}

std::optional<FamilyTag> family_tag_from_name(const std::string& name) {
  static const FamilyTag all[] = {FamilyTag::Deg2Q8, FamilyTag::Deg2PCyc2m, FamilyTag::A,
                                  FamilyTag::B,      FamilyTag::C,           FamilyTag::D,
                                  FamilyTag::E,      FamilyTag::F,           FamilyTag::G,
                                  FamilyTag::H,      FamilyTag::I,           FamilyTag::J,
                                  FamilyTag::K};
  for (FamilyTag t : all)
    if (family_tag_name(t) == name) return t;
  return std::nullopt;
}

int family_degree(FamilyTag t) {
  return (t == FamilyTag::Deg2Q8 || t == FamilyTag::Deg2PCyc2m) ? 2 : 3;
}

std::string family_spec_to_string(const FamilySpec& spec) {
  std::ostringstream os;
  os << family_tag_name(spec.tag);
  if (!spec.params.empty()) {
    os << '(';
    bool first = true;
    for (const auto& [k, v] : spec.params) {
      if (!first) os << ',';
      first = false;
      os << k << '=' << v;
    }
    os << ')';
  }
  return os.str();
}

Group construct_family(const FamilySpec& spec) {
  auto param = [&](const char* key) { return spec.params.at(key); };
  switch (spec.tag) {
    case FamilyTag::Deg2Q8: {
      require_keys(spec, {});
      Group g = quaternion8();
      validate_family(g, 8, 2, false, spec);
      return g;
    }
    case FamilyTag::Deg2PCyc2m: {
      require_keys(spec, {"m", "p"});
      int p = param("p"), m = param("m");
      require(is_prime(p) && p % 2 == 1, "p must be an odd prime");
      require(m >= 1, "m must be at least 1");
      Group g = cyclic_twist(p, static_cast<int>(int_pow(2, m)), p - 1);
      validate_family(g, p * int_pow(2, m), static_cast<int>(int_pow(2, m - 1)), false, spec);
      return g;
    }
    case FamilyTag::A: {
      require_keys(spec, {"p"});
      int p = param("p");
      require(is_prime(p), "p must be prime");
      Group g = direct_product(direct_product(cyclic(p), cyclic(p)), cyclic(p));
      validate_family(g, int_pow(p, 3), static_cast<int>(int_pow(p, 3)), true, spec);
      return g;
    }
    case FamilyTag::B: {
      require_keys(spec, {"k", "p"});
      int p = param("p"), k = param("k");
      require(is_prime(p) && p % 3 == 2, "p must be a prime congruent to -1 mod 3");
      require(k >= 1, "k must be at least 1");
      Group g = two_dim_triality(p, k);
      validate_family(g, static_cast<long long>(p) * p * int_pow(3, k),
                      static_cast<int>(int_pow(3, k - 1)), false, spec);
      return g;
    }
    case FamilyTag::C: {
      require_keys(spec, {"k", "p"});
      int p = param("p"), k = param("k");
      require(is_prime(p) && p % 3 == 1, "p must be a prime congruent to 1 mod 3");
      require(k >= 1, "k must be at least 1");
      int r = 0;  // least multiplicative-order-3 residue mod p
      for (int cand = 2; cand < p; ++cand) {
        long long c3 = static_cast<long long>(cand) * cand % p * cand % p;
        if (c3 == 1) {
          r = cand;
          break;
        }
      }
      require(r != 0, "no order-3 residue mod p");
      Group g = cyclic_twist(p, static_cast<int>(int_pow(3, k)), r);
      validate_family(g, static_cast<long long>(p) * int_pow(3, k),
                      static_cast<int>(int_pow(3, k - 1)), false, spec);
      return g;
    }
    case FamilyTag::D: {
      require_keys(spec, {"k"});
      int k = param("k");
      require(k >= 2, "k must be at least 2");
      int nk = static_cast<int>(int_pow(3, k));
      Group g = cyclic_twist(nk, 3, 1 + nk / 3);
      validate_family(g, int_pow(3, k + 1), nk / 3, false, spec);
      return g;
    }
    case FamilyTag::E: {
      require_keys(spec, {});
      Group g = heisenberg27();
      validate_family(g, 27, 3, false, spec);
      if (g.exponent() != 3)
        throw InternalVerificationFailed("exponent-27 group where exponent 3 expected");
      return g;
    }
    case FamilyTag::F: {
      require_keys(spec, {"p"});
      int p = param("p");
      require(is_prime(p) && p % 2 == 1, "p must be an odd prime");
      Group g = direct_product(quaternion8(), direct_product(cyclic(p), cyclic(p)));
      validate_family(g, 8LL * p * p, 2 * p * p, false, spec);
      return g;
    }
    case FamilyTag::G: {
      require_keys(spec, {"k", "p"});
      int p = param("p"), k = param("k");
      require(is_prime(p) && p % 2 == 1, "p must be an odd prime");
      require(k >= 2, "k must be at least 2");
      int nk = static_cast<int>(int_pow(2, k));
      Group core = cyclic_twist(nk, 2, 1 + nk / 2);
      Group g = direct_product(core, direct_product(cyclic(p), cyclic(p)));
      validate_family(g, 2LL * nk * p * p, nk / 2 * p * p, false, spec);
      return g;
    }
    case FamilyTag::H: {
      require_keys(spec, {"m", "p", "q"});
      int q = param("q"), m = param("m"), p = param("p");
      require(is_prime(q) && q % 2 == 1, "q must be an odd prime");
      require(is_prime(p) && p % 2 == 1, "p must be an odd prime");
      require(p != q, "p and q must be distinct");
      require(m >= 1, "m must be at least 1");
      Group core = cyclic_twist(q, static_cast<int>(int_pow(2, m)), q - 1);
      Group g = direct_product(core, direct_product(cyclic(p), cyclic(p)));
      validate_family(g, static_cast<long long>(q) * int_pow(2, m) * p * p,
                      static_cast<int>(int_pow(2, m - 1)) * p * p, false, spec);
      return g;
    }
    case FamilyTag::I: {
      require_keys(spec, {"m", "p"});
      int p = param("p"), m = param("m");
      require(is_prime(p) && p % 2 == 1, "p must be an odd prime");
      require(m >= 2, "m must be at least 2");
      Group core = cyclic_twist(p, static_cast<int>(int_pow(2, m)), p - 1);
      Group g = direct_product(core, cyclic(2));
      validate_family(g, static_cast<long long>(p) * int_pow(2, m + 1),
                      static_cast<int>(int_pow(2, m)), false, spec);
      return g;
    }
    case FamilyTag::J: {
      require_keys(spec, {});
      Group g = direct_product(quaternion8(), cyclic(2));
      validate_family(g, 16, 4, false, spec);
      return g;
    }
    case FamilyTag::K: {
      require_keys(spec, {});
      Group g = cyclic_twist(4, 4, 3);  // C4 : C4, the smallest member
      validate_family(g, 16, 4, false, spec);
      if (!is_family_k_shape(g))
        throw InternalVerificationFailed("built group fails its own shape predicate");
      return g;
    }
  }
  throw BadParameter("unknown family tag");
}

bool is_family_k_shape(const Group& g) {
  for (const auto& [p, _] : factorize(g.order()))
    if (p != 2) throw NotA2Group("shape predicate requires a group of 2-power order");
  if (g.is_abelian()) return false;
  for (const Subgroup& s : maximal_subgroups(g)) {
    if (2 * s.order() != g.order()) return false;
    Group sub = subgroup_as_group(g, s);
    if (!sub.is_abelian()) return false;
    if (abelian_invariant_factor_count(sub) != 2) return false;
  }
  return true;
}

bool has_only_abelian_proper_subgroups(const Group& g) {
  for (const Subgroup& s : maximal_subgroups(g))
    if (!subgroup_as_group(g, s).is_abelian()) return false;
  return true;
}

std::optional<MinimalNonabelianShape> minimal_nonabelian_shape(const Group& g) {
  if (g.is_abelian()) return std::nullopt;
  auto factors = factorize(g.order());
  if (factors.size() < 2) return std::nullopt;
  if (!has_only_abelian_proper_subgroups(g)) return std::nullopt;
  if (factors.size() != 2)
    throw InternalVerificationFailed(
        "nonabelian group with abelian proper subgroups has more than two prime factors");

  // Exactly one Sylow subgroup is normal; it is elementary abelian and its
  // complement is cyclic of prime-power order.
  int q = 0, p = 0, q_exp = 0, p_exp = 0;
  Subgroup syl_first = sylow_subgroup(g, factors[0].first);
  if (is_normal(g, syl_first)) {
    q = factors[0].first, q_exp = factors[0].second;
    p = factors[1].first, p_exp = factors[1].second;
  } else {
    q = factors[1].first, q_exp = factors[1].second;
    p = factors[0].first, p_exp = factors[0].second;
    if (!is_normal(g, sylow_subgroup(g, q)))
      throw InternalVerificationFailed("neither Sylow subgroup is normal");
  }
  Group syl_q = subgroup_as_group(g, sylow_subgroup(g, q));
  if (!syl_q.is_abelian() || syl_q.exponent() != q)
    throw InternalVerificationFailed("normal Sylow subgroup is not elementary abelian");
  Group syl_p = subgroup_as_group(g, sylow_subgroup(g, p));
  if (syl_p.exponent() != syl_p.order())
    throw InternalVerificationFailed("Sylow complement is not cyclic");

  MinimalNonabelianShape shape;
  shape.q_rank = q_exp;
  shape.p = p;
  shape.a = p_exp;
  if ((int_pow(q, q_exp) - 1) % p != 0)
    throw InternalVerificationFailed("normal Sylow order is not 1 mod p");
  if (center(g).order() != int_pow(p, p_exp - 1))
    throw InternalVerificationFailed("center order is not p^(a-1)");
  return shape;
}

std::optional<FamilySpec> identify_family(const Group& g) {
  int n = g.order();
  auto factors = factorize(n);
  std::vector<FamilySpec> matches;
  auto try_spec = [&](FamilyTag tag, std::map<std::string, int> params) {
    FamilySpec spec{tag, std::move(params)};
    if (is_isomorphic(g, construct_family(spec))) matches.push_back(std::move(spec));
  };

  bool two_group = !factors.empty() && factors.size() == 1 && factors[0].first == 2;
  int odd_count = 0;
  for (const auto& [p, _] : factors)
    if (p != 2) ++odd_count;

  if (n == 8 && !g.is_abelian()) try_spec(FamilyTag::Deg2Q8, {});
  if (factors.size() == 2 && factors[0].first == 2 && odd_count == 1) {
    int m = factors[0].second;
    int p = factors[1].first;
    if (factors[1].second == 1 && m >= 1 && !g.is_abelian()) {
      try_spec(FamilyTag::Deg2PCyc2m, {{"m", m}, {"p", p}});
      if (m >= 3) try_spec(FamilyTag::I, {{"m", m - 1}, {"p", p}});
    }
  }
  if (factors.size() == 1 && factors[0].second == 3)
    try_spec(FamilyTag::A, {{"p", factors[0].first}});
  if (!g.is_abelian()) {
    // b: p^2 * 3^k, p = -1 mod 3 (p = 3 itself is excluded by the exponents)
    if (factors.size() == 2) {
      auto [f0, f1] = std::pair(factors[0], factors[1]);
      for (auto [fp, f3] : {std::pair(f0, f1), std::pair(f1, f0)}) {
        if (f3.first == 3 && fp.first != 3 && fp.second == 2 && fp.first % 3 == 2)
          try_spec(FamilyTag::B, {{"k", f3.second}, {"p", fp.first}});
        if (f3.first == 3 && fp.first % 3 == 1 && fp.second == 1)
          try_spec(FamilyTag::C, {{"k", f3.second}, {"p", fp.first}});
      }
    }
    if (factors.size() == 1 && factors[0].first == 3 && factors[0].second >= 3)
      try_spec(FamilyTag::D, {{"k", factors[0].second - 1}});
    if (n == 27) try_spec(FamilyTag::E, {});
    if (factors.size() == 2 && factors[0].first == 2 && factors[0].second == 3 &&
        factors[1].second == 2)
      try_spec(FamilyTag::F, {{"p", factors[1].first}});
    if (factors.size() == 2 && factors[0].first == 2 && factors[0].second >= 3 &&
        factors[1].second == 2)
      try_spec(FamilyTag::G, {{"k", factors[0].second - 1}, {"p", factors[1].first}});
    if (factors.size() == 3 && factors[0].first == 2) {
      for (auto [fq, fp] : {std::pair(factors[1], factors[2]), std::pair(factors[2], factors[1])})
        if (fq.second == 1 && fp.second == 2)
          try_spec(FamilyTag::H, {{"m", factors[0].second}, {"p", fp.first}, {"q", fq.first}});
    }
    if (n == 16) try_spec(FamilyTag::J, {});
    if (two_group && is_family_k_shape(g)) matches.push_back(FamilySpec{FamilyTag::K, {}});
  }

  std::vector<FamilySpec> distinct;
  for (const FamilySpec& m : matches)
    if (std::find(distinct.begin(), distinct.end(), m) == distinct.end()) distinct.push_back(m);
  if (distinct.size() > 1) {
    std::string names;
    for (const FamilySpec& m : distinct) names += (names.empty() ? "" : ", ") +
                                                  family_spec_to_string(m);
    throw AmbiguousFamily("group matches several families: " + names);
  }
  if (distinct.empty()) return std::nullopt;
  return distinct[0];
}

ClassificationVerdict classification_verdict(const Group& g, int degree, const std::string& id) {
  if (degree != 2 && degree != 3) throw BadParameter("classified degrees are 2 and 3");
  ClassificationVerdict v;
  v.id = id;
  v.group_hash = g.content_hash();
  const MinimalityReport& report = is_minimally_faithful_cached(g);
  v.rdim_value = report.rdim_g;
  v.minimally_faithful = report.is_minimally_faithful && report.rdim_g == degree;
  std::optional<FamilySpec> spec = identify_family(g);
  if (spec && family_degree(spec->tag) == degree) {
    v.matched_family = spec;
    v.matched = true;
  }
  if (degree == 2 && g.is_abelian()) {
    std::vector<int> inv = abelian_invariant_factors(g);
    if (inv.size() == 2 && inv[0] == inv[1] && is_prime(inv[0])) v.matched = true;
  }
  v.consistent = (v.minimally_faithful == v.matched);
  return v;
}

std::vector<ClassificationVerdict> verify_classification(const std::vector<Group>& corpus,
                                                         int degree) {
  if (degree != 2 && degree != 3) throw BadParameter("classified degrees are 2 and 3");
  std::vector<ClassificationVerdict> verdicts;
  verdicts.reserve(corpus.size());
  for (const Group& g : corpus) verdicts.push_back(classification_verdict(g, degree));
  return verdicts;
}

}  // namespace minrep

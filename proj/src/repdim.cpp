#include "minrep/repdim.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace minrep {
namespace {

struct Bits {
  std::vector<uint64_t> w;
  Bits() = default;
  explicit Bits(int nbits) : w((nbits + 63) / 64, 0) {}
  void set(int i) { w[i >> 6] |= 1ULL << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bool intersects(const Bits& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }
  bool covers(const Bits& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if (o.w[i] & ~w[i]) return false;
    return true;
  }
  void or_with(const Bits& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
  void andnot(const Bits& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
  }
  bool none() const {
    for (uint64_t x : w)
      if (x) return false;
    return true;
  }
};

// rank of a finite abelian group given as a member set: max_p dim_Fp of the
// p-torsion bottom layer.
int abelian_rank_of_members(const Group& g, const std::vector<int>& members) {
  int size = static_cast<int>(members.size());
  int rank = 0;
  for (const auto& [p, _] : factorize(size)) {
    int cnt = 0;
    for (int x : members)
      if (g.power(x, p) == 0) ++cnt;
    int lg = 0;
    while (cnt > 1) {
      if (cnt % p != 0)
        throw InternalVerificationFailed("p-torsion count is not a power of p");
      cnt /= p;
      ++lg;
    }
    rank = std::max(rank, lg);
  }
  return rank;
}

struct CoverProblem {
  const Group* g = nullptr;
  int k = 0;  // irreducibles
  int m = 0;  // minimal normal subgroups
  std::vector<int> degrees;
  std::vector<Bits> cover;     // per character: which minimal normals it separates
  std::vector<Bits> suffix;    // suffix[t] = OR of cover[t..k-1]
  std::vector<int> mindeg;     // per constraint
  bool abelian = false;
  std::vector<std::vector<int>> kernels;  // per character, abelian path only
};

int lower_bound(const CoverProblem& p, const Bits& uncovered,
                const std::vector<int>& kernel) {
  if (uncovered.none()) return 0;
  if (p.abelian) return abelian_rank_of_members(*p.g, kernel);
  int lb = 0;
  for (int i = 0; i < p.m; ++i)
    if (uncovered.test(i)) lb = std::max(lb, p.mindeg[i]);
  return lb;
}

bool lex_dfs(const CoverProblem& p, int t, int weight, Bits& uncovered,
             std::vector<int>& kernel, std::vector<int>& chosen,
             std::vector<int>& out, int budget) {
  if (uncovered.none()) {
    out = chosen;
    return true;
  }
  if (t >= p.k) return false;
  if (!p.suffix[t].covers(uncovered)) return false;
  for (int c = t; c < p.k; ++c) {
    if (!p.cover[c].intersects(uncovered)) continue;
    Bits saved_uncovered = uncovered;
    std::vector<int> saved_kernel;
    uncovered.andnot(p.cover[c]);
    if (p.abelian) {
      saved_kernel = kernel;
      std::vector<int> meet;
      std::set_intersection(kernel.begin(), kernel.end(), p.kernels[c].begin(),
                            p.kernels[c].end(), std::back_inserter(meet));
      kernel = std::move(meet);
    }
    int w = weight + p.degrees[c];
    if (w + lower_bound(p, uncovered, kernel) <= budget) {
      chosen.push_back(c);
      if (lex_dfs(p, c + 1, w, uncovered, kernel, chosen, out, budget)) return true;
      chosen.pop_back();
    }
    uncovered = std::move(saved_uncovered);
    if (p.abelian) kernel = std::move(saved_kernel);
  }
  return false;
}

CoverProblem build_cover_problem(const Group& g, const CharacterTable& table) {
  CoverProblem p;
  p.g = &g;
  p.k = static_cast<int>(table.irreducibles.size());
  p.abelian = g.is_abelian();
  std::vector<Subgroup> minimals = minimal_normal_subgroups(g);
  p.m = static_cast<int>(minimals.size());
  p.degrees.resize(p.k);
  p.cover.assign(p.k, Bits(std::max(p.m, 1)));
  for (int t = 0; t < p.k; ++t) {
    const Character& chi = table.irreducibles[t];
    p.degrees[t] = chi.degree();
    for (int i = 0; i < p.m; ++i) {
      // A minimal normal subgroup meets a normal subgroup trivially or lies
      // inside it, so one non-identity element decides kernel containment.
      int x = minimals[i].members[1];
      if (chi.values[table.partition.class_of[x]] != chi.values[0]) p.cover[t].set(i);
    }
  }
  p.suffix.assign(p.k + 1, Bits(std::max(p.m, 1)));
  for (int t = p.k - 1; t >= 0; --t) {
    p.suffix[t] = p.suffix[t + 1];
    p.suffix[t].or_with(p.cover[t]);
  }
  p.mindeg.assign(p.m, INT_MAX);
  for (int i = 0; i < p.m; ++i) {
    for (int t = 0; t < p.k; ++t)
      if (p.cover[t].test(i)) p.mindeg[i] = std::min(p.mindeg[i], p.degrees[t]);
    if (p.mindeg[i] == INT_MAX)
      throw InternalVerificationFailed("a minimal normal subgroup escapes every irreducible");
  }
  if (p.abelian) {
    p.kernels.resize(p.k);
    for (int t = 0; t < p.k; ++t) {
      const Character& chi = table.irreducibles[t];
      for (int x = 0; x < g.order(); ++x)
        if (chi.values[table.partition.class_of[x]] == chi.values[0])
          p.kernels[t].push_back(x);
    }
  }
  return p;
}

void validate_certificate(const Group& g, const CharacterTable& table,
                          const RdimCertificate& cert) {
  int weight = 0;
  std::vector<char> in_kernel(g.order(), 1);
  int prev = -1;
  for (int t : cert.witness) {
    if (t <= prev || t >= static_cast<int>(table.irreducibles.size()))
      throw InternalVerificationFailed("witness indices are not strictly ascending");
    prev = t;
    const Character& chi = table.irreducibles[t];
    weight += chi.degree();
    for (int x = 0; x < g.order(); ++x)
      if (chi.values[table.partition.class_of[x]] != chi.values[0]) in_kernel[x] = 0;
  }
  if (weight != cert.value)
    throw InternalVerificationFailed("witness degree sum differs from the certified value");
  int kernel_size = 0;
  for (char b : in_kernel) kernel_size += b;
  if (kernel_size != 1)
    throw InternalVerificationFailed("witness joint kernel is not trivial");
}

RdimCertificate solve_cover(const Group& g, const CharacterTable& table) {
  CoverProblem p = build_cover_problem(g, table);
  Bits all(std::max(p.m, 1));
  for (int i = 0; i < p.m; ++i) all.set(i);
  int total = std::accumulate(p.degrees.begin(), p.degrees.end(), 0);

  int start_budget;
  if (p.abelian) {
    start_budget = abelian_invariant_factor_count(g);
  } else {
    start_budget = 0;
    for (int i = 0; i < p.m; ++i) start_budget = std::max(start_budget, p.mindeg[i]);
  }

  std::vector<int> whole(g.order());
  std::iota(whole.begin(), whole.end(), 0);
  for (int budget = start_budget; budget <= std::max(total, 0); ++budget) {
    Bits uncovered = all;
    std::vector<int> kernel = whole;
    std::vector<int> chosen, out;
    if (lex_dfs(p, 0, 0, uncovered, kernel, chosen, out, budget)) {
      RdimCertificate cert;
      cert.group_hash = g.content_hash();
      cert.witness = std::move(out);
      for (int t : cert.witness) cert.value += p.degrees[t];
      if (p.abelian && cert.value != start_budget)
        throw InternalVerificationFailed(
            "abelian minimal degree differs from the invariant factor count");
      validate_certificate(g, table, cert);
      return cert;
    }
    if (p.abelian)
      throw InternalVerificationFailed(
          "no abelian cover found at the invariant factor count");
  }
  throw InternalVerificationFailed("no irreducible subset has trivial joint kernel");
}

}  // namespace

RdimCertificate rdim(const Group& g) {
  const CharacterTable& table = character_table_cached(g);
  return solve_cover(g, table);
}

const RdimCertificate& rdim_cached(const Group& g) {
  static std::map<uint64_t, std::unique_ptr<RdimCertificate>> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(g.content_hash());
    if (it != cache.end()) return *it->second;
  }
  RdimCertificate computed = rdim(g);
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(g.content_hash());
  if (it == cache.end())
    it = cache.emplace(g.content_hash(),
                       std::make_unique<RdimCertificate>(std::move(computed))).first;
  return *it->second;
}

RdimCertificate rdim_bruteforce(const Group& g) {
  const CharacterTable& table = character_table_cached(g);
  int k = static_cast<int>(table.irreducibles.size());
  if (k > kBruteforceIrreducibleCap)
    throw TooManyIrreducibles("exhaustive subset scan limited to " +
                              std::to_string(kBruteforceIrreducibleCap) + " irreducibles");
  int n = g.order();
  int chunks = (n + 63) / 64;
  std::vector<std::vector<uint64_t>> kerbits(k, std::vector<uint64_t>(chunks, 0));
  std::vector<int> degrees(k);
  for (int t = 0; t < k; ++t) {
    const Character& chi = table.irreducibles[t];
    degrees[t] = chi.degree();
    for (int x = 0; x < n; ++x)
      if (chi.values[table.partition.class_of[x]] == chi.values[0])
        kerbits[t][x >> 6] |= 1ULL << (x & 63);
  }

  auto witness_of = [&](uint32_t mask) {
    std::vector<int> w;
    for (int t = 0; t < k; ++t)
      if (mask & (1u << t)) w.push_back(t);
    return w;
  };
  auto faithful = [&](uint32_t mask) {
    std::vector<uint64_t> meet(chunks, ~0ULL);
    if (n % 64) meet[chunks - 1] = (1ULL << (n % 64)) - 1;
    for (int t = 0; t < k; ++t) {
      if (!(mask & (1u << t))) continue;
      int population = 0;
      for (int c = 0; c < chunks; ++c) {
        meet[c] &= kerbits[t][c];
        population += __builtin_popcountll(meet[c]);
      }
      if (population == 1) return true;  // only the identity remains
    }
    int population = 0;
    for (int c = 0; c < chunks; ++c) population += __builtin_popcountll(meet[c]);
    return population == 1;
  };

  int best_weight = INT_MAX;
  std::vector<int> best_witness;
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    int weight = 0;
    for (int t = 0; t < k; ++t)
      if (mask & (1u << t)) weight += degrees[t];
    if (weight > best_weight) continue;
    if (weight == best_weight) {
      std::vector<int> w = witness_of(mask);
      if (!(w < best_witness)) continue;
      if (!faithful(mask)) continue;
      best_witness = std::move(w);
    } else {
      if (!faithful(mask)) continue;
      best_weight = weight;
      best_witness = witness_of(mask);
    }
  }
  if (best_weight == INT_MAX)
    throw InternalVerificationFailed("no faithful irreducible subset found");
  RdimCertificate cert;
  cert.group_hash = g.content_hash();
  cert.value = best_weight;
  cert.witness = std::move(best_witness);
  validate_certificate(g, table, cert);
  return cert;
}

MinimalityReport is_minimally_faithful(const Group& g) {
  MinimalityReport report;
  report.group_hash = g.content_hash();
  report.rdim_g = rdim_cached(g).value;
  report.is_minimally_faithful = true;
  for (const Subgroup& s : maximal_subgroups(g)) {
    Group sub = subgroup_as_group(g, s);
    int sub_rdim = rdim_cached(sub).value;
    report.max_subgroup_rdims.emplace_back(s.order(), sub_rdim);
    if (sub_rdim >= report.rdim_g) report.is_minimally_faithful = false;
  }
  report.degree = report.is_minimally_faithful ? report.rdim_g : 0;
  return report;
}

const MinimalityReport& is_minimally_faithful_cached(const Group& g) {
  static std::map<uint64_t, std::unique_ptr<MinimalityReport>> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(g.content_hash());
    if (it != cache.end()) return *it->second;
  }
  MinimalityReport computed = is_minimally_faithful(g);
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(g.content_hash());
  if (it == cache.end())
    it = cache.emplace(g.content_hash(),
                       std::make_unique<MinimalityReport>(std::move(computed))).first;
  return *it->second;
}

bool scalar_extension_check(const Group& g, int n) {
  if (n < 1) throw BadParameter("scalar extension factor must be positive");
  if (std::gcd(n, center(g).order()) != 1)
    throw GcdPreconditionViolated("extension order must be coprime to the center order");
  Group extended = direct_product(g, cyclic(n));
  // C_n acts by scalars on any faithful representation of G, so the dimension
  // does not grow -- except that a nontrivial C_n needs at least one dimension
  // to be seen at all (relevant only when G is trivial and rdim(G) = 0).
  int expected = n == 1 ? rdim_cached(g).value : std::max(rdim_cached(g).value, 1);
  return rdim_cached(extended).value == expected;
}

}  // namespace minrep

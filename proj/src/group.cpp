#include "minrep/group.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace minrep {

namespace {

uint64_t fnv1a_table(const std::vector<int>& table, int order) {
  uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  };
  feed(static_cast<uint64_t>(order));
  for (int x : table) feed(static_cast<uint64_t>(x));
  return h;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<int, int>> factorize(int n) {
  std::vector<std::pair<int, int>> factors;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      factors.emplace_back(p, e);
    }
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

Group Group::from_mul_table(std::vector<int> table, int order, std::map<std::string, int> labels) {
  if (order < 1) throw BadParameter("group order must be positive");
  if (order > kTableCap)
    throw ClosureExceedsCap("group order " + std::to_string(order) + " exceeds table cap " +
                            std::to_string(kTableCap));
  if (table.size() != static_cast<size_t>(order) * order)
    throw BadParameter("multiplication table has wrong size");
  for (int v : table)
    if (v < 0 || v >= order) throw BadParameter("multiplication table entry out of range");

  // Latin square: every row and column is a permutation.
  std::vector<char> seen(order);
  for (int r = 0; r < order; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < order; ++c) {
      int v = table[r * order + c];
      if (seen[v]) throw BadParameter("multiplication table row is not a permutation");
      seen[v] = 1;
    }
  }
  for (int c = 0; c < order; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < order; ++r) {
      int v = table[r * order + c];
      if (seen[v]) throw BadParameter("multiplication table column is not a permutation");
      seen[v] = 1;
    }
  }
  for (int g = 0; g < order; ++g)
    if (table[g] != g || table[g * order] != g)
      throw BadParameter("index 0 is not a two-sided identity");
  if (order <= 512) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b) {
        int ab = table[a * order + b];
        for (int c = 0; c < order; ++c)
          if (table[ab * order + c] != table[a * order + table[b * order + c]])
            throw BadParameter("multiplication table is not associative");
      }
  }

  Group g;
  g.n_ = order;
  g.mul_ = std::move(table);
  g.inv_.assign(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (g.mul_[a * order + b] == 0) {
        if (g.mul_[b * order + a] != 0)
          throw BadParameter("one-sided inverse found; table is not a group");
        g.inv_[a] = b;
        break;
      }
    }
    if (g.inv_[a] < 0) throw BadParameter("element without inverse");
  }
  g.elem_order_.assign(order, 1);
  g.exponent_ = 1;
  for (int a = 0; a < order; ++a) {
    int acc = a, ord = 1;
    while (acc != 0) {
      acc = g.mul_[acc * order + a];
      ++ord;
    }
    g.elem_order_[a] = ord;
    g.exponent_ = std::lcm(g.exponent_, ord);
  }
  g.abelian_ = true;
  for (int a = 0; a < order && g.abelian_; ++a)
    for (int b = a + 1; b < order; ++b)
      if (g.mul_[a * order + b] != g.mul_[b * order + a]) {
        g.abelian_ = false;
        break;
      }
  g.hash_ = fnv1a_table(g.mul_, order);
  g.labels_ = std::move(labels);
  for (const auto& [label, idx] : g.labels_)
    if (idx < 0 || idx >= order)
      throw BadParameter("generator label '" + label + "' out of range");
  return g;
}

Group Group::trivial() { return from_mul_table({0}, 1); }

int Group::power(int g, long k) const {
  long m = elem_order_[g];
  long r = k % m;
  if (r < 0) r += m;
  int acc = 0;
  for (long i = 0; i < r; ++i) acc = mul(acc, g);
  return acc;
}

std::string Group::content_hash_hex() const {
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << hash_;
  return out.str();
}

bool Subgroup::contains(int g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

bool Subgroup::contains_all(const Subgroup& other) const {
  return std::includes(members.begin(), members.end(), other.members.begin(),
                       other.members.end());
}

// ---------------------------------------------------------------------------
// constructions

Group group_from_permutations(int degree, const std::vector<std::vector<int>>& generators,
                              int cap) {
  if (degree < 1) throw BadParameter("permutation degree must be positive");
  for (size_t gi = 0; gi < generators.size(); ++gi) {
    const auto& p = generators[gi];
    if (static_cast<int>(p.size()) != degree)
      throw NonBijective("generator " + std::to_string(gi) + " has length " +
                         std::to_string(p.size()) + ", expected " + std::to_string(degree));
    std::vector<char> seen(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v])
        throw NonBijective("generator " + std::to_string(gi) +
                           " is not a permutation of 0.." + std::to_string(degree - 1));
      seen[v] = 1;
    }
  }

  std::vector<int> identity(degree);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<std::vector<int>> elems{identity};
  std::map<std::vector<int>, int> index_of{{identity, 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : generators) {
      std::vector<int> next(degree);
      for (int i = 0; i < degree; ++i) next[i] = elems[head][gen[i]];
      if (index_of.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(next));
        if (static_cast<int>(elems.size()) > cap)
          throw ClosureExceedsCap("closure exceeds cap " + std::to_string(cap));
      }
    }
  }

  int n = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<size_t>(n) * n);
  std::vector<int> prod(degree);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int i = 0; i < degree; ++i) prod[i] = elems[a][elems[b][i]];
      table[a * n + b] = index_of.at(prod);
    }
  std::map<std::string, int> labels;
  for (size_t gi = 0; gi < generators.size(); ++gi)
    labels["g" + std::to_string(gi)] = index_of.at(generators[gi]);
  return Group::from_mul_table(std::move(table), n, std::move(labels));
}

Group cyclic(int n) {
  if (n < 1) throw BadParameter("cyclic: order must be positive");
  if (n > kTableCap) throw ClosureExceedsCap("cyclic order exceeds table cap");
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  std::map<std::string, int> labels;
  if (n > 1) labels["a"] = 1;
  return Group::from_mul_table(std::move(table), n, std::move(labels));
}

Group dihedral(int order) {
  if (order < 2 || order % 2 != 0) throw BadParameter("dihedral: order must be even and >= 2");
  int n = order / 2;
  // element (i, j) = r^i s^j at index i + n*j
  auto idx = [n](int i, int j) { return ((i % n) + n) % n + n * j; };
  std::vector<int> table(static_cast<size_t>(order) * order);
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < n; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          int i = j1 == 0 ? i1 + i2 : i1 - i2;
          table[idx(i1, j1) * order + idx(i2, j2)] = idx(i, j1 ^ j2);
        }
  std::map<std::string, int> labels;
  if (n > 1) labels["r"] = 1;
  labels["s"] = n;
  return Group::from_mul_table(std::move(table), order, std::move(labels));
}

Group dicyclic(int order) {
  if (order < 8 || order % 4 != 0)
    throw BadParameter("dicyclic: order must be a multiple of 4 and >= 8");
  int n = order / 4;
  int m = 2 * n;  // order of the cyclic part <A>
  // element A^i B^j at index i + m*j; B^2 = A^n, B A B^-1 = A^-1
  auto idx = [m](int i, int j) { return ((i % m) + m) % m + m * j; };
  std::vector<int> table(static_cast<size_t>(order) * order);
  for (int i1 = 0; i1 < m; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int i2 = 0; i2 < m; ++i2)
        for (int j2 = 0; j2 < 2; ++j2) {
          int to;
          if (j1 == 0) {
            to = idx(i1 + i2, j2);
          } else if (j2 == 0) {
            to = idx(i1 - i2, 1);
          } else {
            to = idx(i1 - i2 + n, 0);
          }
          table[idx(i1, j1) * order + idx(i2, j2)] = to;
        }
  std::map<std::string, int> labels{{"a", 1}, {"b", m}};
  return Group::from_mul_table(std::move(table), order, std::move(labels));
}

Group quaternion8() { return dicyclic(8); }

Group heisenberg27() {
  // upper unitriangular 3x3 over F_3: (a, b, c) at index a*9 + b*3 + c
  auto idx = [](int a, int b, int c) { return a * 9 + b * 3 + c; };
  std::vector<int> table(27 * 27);
  for (int a1 = 0; a1 < 3; ++a1)
    for (int b1 = 0; b1 < 3; ++b1)
      for (int c1 = 0; c1 < 3; ++c1)
        for (int a2 = 0; a2 < 3; ++a2)
          for (int b2 = 0; b2 < 3; ++b2)
            for (int c2 = 0; c2 < 3; ++c2)
              table[idx(a1, b1, c1) * 27 + idx(a2, b2, c2)] =
                  idx((a1 + a2) % 3, (b1 + b2) % 3, (c1 + c2 + a1 * b2) % 3);
  std::map<std::string, int> labels{{"x", idx(1, 0, 0)}, {"y", idx(0, 1, 0)}};
  return Group::from_mul_table(std::move(table), 27, std::move(labels));
}

Group direct_product(const Group& a, const Group& b) {
  long long n = static_cast<long long>(a.order()) * b.order();
  if (n > kTableCap) throw ClosureExceedsCap("direct product order exceeds table cap");
  int na = a.order(), nb = b.order(), nn = static_cast<int>(n);
  std::vector<int> table(static_cast<size_t>(nn) * nn);
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          table[(a1 * nb + b1) * nn + (a2 * nb + b2)] = a.mul(a1, a2) * nb + b.mul(b1, b2);
  std::map<std::string, int> labels;
  for (const auto& [label, idx] : a.generator_labels()) labels["a." + label] = idx * nb;
  for (const auto& [label, idx] : b.generator_labels()) labels["b." + label] = idx;
  return Group::from_mul_table(std::move(table), nn, std::move(labels));
}

namespace {

// Extend a generator->image map to an automorphism of n, or throw.
std::vector<int> extend_to_automorphism(const Group& n, const std::map<int, int>& images) {
  std::vector<int> img(n.order(), -1);
  img[0] = 0;
  std::vector<int> list{0};
  for (const auto& [key, val] : images) {
    if (key < 0 || key >= n.order() || val < 0 || val >= n.order())
      throw InvalidAction("action image map references elements out of range");
    if (img[key] != -1 && img[key] != val)
      throw InvalidAction("action image map is inconsistent");
    if (img[key] == -1) {
      img[key] = val;
      list.push_back(key);
    }
  }
  for (size_t head = 0; head < list.size(); ++head) {
    for (const auto& [key, val] : images) {
      int e = n.mul(list[head], key);
      int ie = n.mul(img[list[head]], val);
      if (img[e] == -1) {
        img[e] = ie;
        list.push_back(e);
      }
    }
  }
  if (list.size() != static_cast<size_t>(n.order()))
    throw InvalidAction("action image map keys do not generate the acted-on group");
  std::vector<char> hit(n.order(), 0);
  for (int v : img) {
    if (hit[v]) throw InvalidAction("action image map does not extend to a bijection");
    hit[v] = 1;
  }
  for (int a = 0; a < n.order(); ++a)
    for (int b = 0; b < n.order(); ++b)
      if (img[n.mul(a, b)] != n.mul(img[a], img[b]))
        throw InvalidAction("action image map does not extend to an automorphism");
  return img;
}

}  // namespace

Group semidirect_product(const Group& n, const Group& h, const AutomorphismAction& action) {
  if (action.h_generators.size() != action.images.size())
    throw InvalidAction("action generator and image counts differ");
  for (int g : action.h_generators)
    if (g < 0 || g >= h.order()) throw InvalidAction("acting generator out of range");
  Subgroup gen_span = subgroup_closure(h, action.h_generators);
  if (gen_span.order() != h.order())
    throw InvalidAction("acting generators do not generate the acting group");

  // phi[h] as a permutation of N, assembled by breadth-first words in the
  // acting generators, then verified as a homomorphism on all pairs.
  std::vector<std::vector<int>> phi(h.order());
  std::vector<int> id_map(n.order());
  std::iota(id_map.begin(), id_map.end(), 0);
  phi[0] = id_map;
  std::vector<std::vector<int>> gen_autos;
  gen_autos.reserve(action.images.size());
  for (const auto& images : action.images) gen_autos.push_back(extend_to_automorphism(n, images));

  std::vector<int> list{0};
  std::vector<char> have(h.order(), 0);
  have[0] = 1;
  for (size_t head = 0; head < list.size(); ++head) {
    for (size_t gi = 0; gi < action.h_generators.size(); ++gi) {
      int next = h.mul(list[head], action.h_generators[gi]);
      if (have[next]) continue;
      have[next] = 1;
      phi[next].resize(n.order());
      for (int x = 0; x < n.order(); ++x) phi[next][x] = phi[list[head]][gen_autos[gi][x]];
      list.push_back(next);
    }
  }
  for (int h1 = 0; h1 < h.order(); ++h1)
    for (int h2 = 0; h2 < h.order(); ++h2) {
      int h12 = h.mul(h1, h2);
      for (int x = 0; x < n.order(); ++x)
        if (phi[h12][x] != phi[h1][phi[h2][x]])
          throw InvalidAction("action is not a homomorphism into the automorphism group");
    }

  long long total = static_cast<long long>(n.order()) * h.order();
  if (total > kTableCap) throw ClosureExceedsCap("semidirect product order exceeds table cap");
  int nn = n.order(), nh = h.order(), order = static_cast<int>(total);
  std::vector<int> table(static_cast<size_t>(order) * order);
  for (int n1 = 0; n1 < nn; ++n1)
    for (int h1 = 0; h1 < nh; ++h1)
      for (int n2 = 0; n2 < nn; ++n2)
        for (int h2 = 0; h2 < nh; ++h2)
          table[(n1 * nh + h1) * order + (n2 * nh + h2)] =
              n.mul(n1, phi[h1][n2]) * nh + h.mul(h1, h2);
  std::map<std::string, int> labels;
  for (const auto& [label, idx] : n.generator_labels()) labels["n." + label] = idx * nh;
  for (const auto& [label, idx] : h.generator_labels()) labels["h." + label] = idx;
  return Group::from_mul_table(std::move(table), order, std::move(labels));
}

// ---------------------------------------------------------------------------
// subgroups

Subgroup whole_group(const Group& g) {
  Subgroup s;
  s.parent_hash = g.content_hash();
  s.members.resize(g.order());
  std::iota(s.members.begin(), s.members.end(), 0);
  return s;
}

Subgroup trivial_subgroup(const Group& g) {
  return Subgroup{g.content_hash(), {0}};
}

Subgroup subgroup_closure(const Group& g, const std::vector<int>& seed) {
  for (int s : seed)
    if (s < 0 || s >= g.order()) throw BadParameter("closure seed element out of range");
  std::vector<char> in(g.order(), 0);
  std::vector<int> members{0};
  in[0] = 1;
  for (size_t head = 0; head < members.size(); ++head)
    for (int s : seed) {
      int p = g.mul(members[head], s);
      if (!in[p]) {
        in[p] = 1;
        members.push_back(p);
      }
    }
  std::sort(members.begin(), members.end());
  return Subgroup{g.content_hash(), std::move(members)};
}

bool is_subgroup_set(const Group& g, const std::vector<int>& members) {
  if (members.empty() || members[0] != 0) return false;
  if (!std::is_sorted(members.begin(), members.end())) return false;
  for (int a : members)
    for (int b : members)
      if (!std::binary_search(members.begin(), members.end(), g.mul(a, b))) return false;
  return true;
}

Group subgroup_as_group(const Group& g, const Subgroup& s) {
  if (s.parent_hash != g.content_hash())
    throw NotASubgroup("subgroup belongs to a different parent group");
  int m = s.order();
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < m; ++i) pos[s.members[i]] = i;
  if (pos[0] != 0) throw NotASubgroup("subgroup does not contain the identity");
  std::vector<int> table(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = pos[g.mul(s.members[i], s.members[j])];
      if (p < 0) throw NotASubgroup("member set is not closed under multiplication");
      table[i * m + j] = p;
    }
  return Group::from_mul_table(std::move(table), m);
}

bool is_normal(const Group& g, const Subgroup& s) {
  for (int m : s.members)
    for (int x = 0; x < g.order(); ++x)
      if (!s.contains(g.conj(x, m))) return false;
  return true;
}

Subgroup normal_closure(const Group& g, int x) {
  if (x < 0 || x >= g.order()) throw BadParameter("element out of range");
  std::vector<char> seen(g.order(), 0);
  std::vector<int> cls;
  for (int t = 0; t < g.order(); ++t) {
    int c = g.conj(t, x);
    if (!seen[c]) {
      seen[c] = 1;
      cls.push_back(c);
    }
  }
  return subgroup_closure(g, cls);
}

Subgroup center(const Group& g) {
  std::vector<int> members;
  for (int a = 0; a < g.order(); ++a) {
    bool central = true;
    for (int b = 0; b < g.order(); ++b)
      if (g.mul(a, b) != g.mul(b, a)) {
        central = false;
        break;
      }
    if (central) members.push_back(a);
  }
  return Subgroup{g.content_hash(), std::move(members)};
}

namespace {

std::vector<int> commutator_set(const Group& g, const std::vector<int>& members) {
  std::vector<char> seen(g.order(), 0);
  std::vector<int> comms;
  for (int a : members)
    for (int b : members) {
      int c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return comms;
}

}  // namespace

Subgroup derived_subgroup(const Group& g) {
  return subgroup_closure(g, commutator_set(g, whole_group(g).members));
}

std::vector<Subgroup> derived_series(const Group& g) {
  std::vector<Subgroup> series{whole_group(g)};
  while (true) {
    Subgroup next = subgroup_closure(g, commutator_set(g, series.back().members));
    if (next.members == series.back().members) break;
    series.push_back(std::move(next));
  }
  return series;
}

Subgroup sylow_subgroup(const Group& g, int p) {
  if (!is_prime(p)) throw BadParameter("sylow_subgroup: p must be prime");
  int target = 1, n = g.order();
  while (n % p == 0) {
    n /= p;
    target *= p;
  }
  Subgroup sub = trivial_subgroup(g);
  while (sub.order() < target) {
    bool grew = false;
    for (int cand = 1; cand < g.order(); ++cand) {
      if (sub.contains(cand)) continue;
      int ord = g.element_order(cand);
      bool ppower = true;
      while (ord > 1) {
        if (ord % p != 0) {
          ppower = false;
          break;
        }
        ord /= p;
      }
      if (!ppower) continue;
      bool normalizes = true;
      for (int m : sub.members)
        if (!sub.contains(g.conj(cand, m))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      std::vector<int> seed = sub.members;
      seed.push_back(cand);
      sub = subgroup_closure(g, seed);
      grew = true;
      break;
    }
    if (!grew)
      throw InternalVerificationFailed("sylow_subgroup: no normalizing p-element found");
  }
  if (sub.order() != target)
    throw InternalVerificationFailed("sylow_subgroup: overshoot past the p-part");
  return sub;
}

std::vector<Subgroup> all_subgroups(const Group& g) {
  if (g.order() > kLatticeCap)
    throw LatticeCapExceeded("subgroup lattice requested for order " +
                             std::to_string(g.order()) + " > cap " +
                             std::to_string(kLatticeCap));
  std::set<std::vector<int>> pool;
  for (int x = 0; x < g.order(); ++x) pool.insert(subgroup_closure(g, {x}).members);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<const std::vector<int>*> snapshot;
    snapshot.reserve(pool.size());
    for (const auto& m : pool) snapshot.push_back(&m);
    for (size_t i = 0; i < snapshot.size(); ++i)
      for (size_t j = i + 1; j < snapshot.size(); ++j) {
        if (std::includes(snapshot[i]->begin(), snapshot[i]->end(), snapshot[j]->begin(),
                          snapshot[j]->end()) ||
            std::includes(snapshot[j]->begin(), snapshot[j]->end(), snapshot[i]->begin(),
                          snapshot[i]->end()))
          continue;
        std::vector<int> seed = *snapshot[i];
        seed.insert(seed.end(), snapshot[j]->begin(), snapshot[j]->end());
        if (pool.insert(subgroup_closure(g, seed).members).second) grew = true;
      }
  }
  std::vector<Subgroup> result;
  result.reserve(pool.size());
  for (const auto& m : pool) result.push_back(Subgroup{g.content_hash(), m});
  std::sort(result.begin(), result.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members < b.members;
  });
  return result;
}

std::vector<Subgroup> maximal_subgroups(const Group& g) {
  std::vector<Subgroup> all = all_subgroups(g);
  std::vector<Subgroup> maximal;
  for (const Subgroup& cand : all) {
    if (cand.order() == g.order()) continue;
    bool is_max = true;
    for (const Subgroup& other : all) {
      if (other.order() == g.order() || other.order() <= cand.order()) continue;
      if (other.contains_all(cand)) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(cand);
  }
  return maximal;
}

std::vector<Subgroup> minimal_normal_subgroups(const Group& g) {
  std::set<std::vector<int>> pool;
  for (int x = 1; x < g.order(); ++x) pool.insert(normal_closure(g, x).members);
  std::vector<Subgroup> minimal;
  for (const auto& cand : pool) {
    bool is_min = true;
    for (const auto& other : pool) {
      if (other.size() >= cand.size()) continue;
      if (std::includes(cand.begin(), cand.end(), other.begin(), other.end())) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(Subgroup{g.content_hash(), cand});
  }
  std::sort(minimal.begin(), minimal.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members < b.members;
  });
  return minimal;
}

// ---------------------------------------------------------------------------
// abelian structure

std::vector<int> abelian_invariant_factors(const Group& g) {
  if (!g.is_abelian()) throw NotAbelian("invariant factors require an abelian group");
  std::vector<std::vector<int>> per_prime;  // descending prime-power lists
  for (auto [p, a] : factorize(g.order())) {
    // count[j] = #elements of order dividing p^j
    std::vector<int> logs{0};  // log_p of those counts
    for (int j = 1; j <= a; ++j) {
      long long pj = 1;
      for (int t = 0; t < j; ++t) pj *= p;
      int cnt = 0;
      for (int x = 0; x < g.order(); ++x)
        if (pj % g.element_order(x) == 0) ++cnt;
      int lg = 0;
      while (cnt > 1) {
        if (cnt % p != 0)
          throw InternalVerificationFailed("p-torsion count is not a power of p");
        cnt /= p;
        ++lg;
      }
      logs.push_back(lg);
    }
    // d[j] = #cyclic factors with exponent >= j
    std::vector<int> d(a + 2, 0);
    for (int j = 1; j <= a; ++j) d[j] = logs[j] - logs[j - 1];
    std::vector<int> factors;  // descending
    for (int j = a; j >= 1; --j) {
      int exactly = d[j] - d[j + 1];
      long long pj = 1;
      for (int t = 0; t < j; ++t) pj *= p;
      for (int c = 0; c < exactly; ++c) factors.push_back(static_cast<int>(pj));
    }
    per_prime.push_back(std::move(factors));
  }
  size_t count = 0;
  for (const auto& list : per_prime) count = std::max(count, list.size());
  std::vector<int> invariant(count, 1);  // slot 0 = largest
  for (const auto& list : per_prime)
    for (size_t t = 0; t < list.size(); ++t) invariant[t] *= list[t];
  std::reverse(invariant.begin(), invariant.end());  // ascending, n1 | n2 | ...
  long long prod = 1;
  for (int f : invariant) prod *= f;
  if (prod != g.order())
    throw InternalVerificationFailed("invariant factors do not multiply to the group order");
  return invariant;
}

int abelian_invariant_factor_count(const Group& g) {
  return static_cast<int>(abelian_invariant_factors(g).size());
}

std::vector<int> minimal_generating_sequence(const Group& g) {
  std::vector<int> gens;
  Subgroup span = trivial_subgroup(g);
  while (span.order() < g.order()) {
    int next = -1;
    for (int x = 0; x < g.order(); ++x)
      if (!span.contains(x)) {
        next = x;
        break;
      }
    gens.push_back(next);
    span = subgroup_closure(g, gens);
  }
  return gens;
}

// ---------------------------------------------------------------------------
// isomorphism

namespace {

std::vector<int> class_sizes_of(const Group& g) {
  std::vector<int> cls(g.order(), -1);
  std::vector<int> sizes;
  for (int x = 0; x < g.order(); ++x) {
    if (cls[x] >= 0) continue;
    int id = static_cast<int>(sizes.size());
    int size = 0;
    for (int t = 0; t < g.order(); ++t) {
      int c = g.conj(t, x);
      if (cls[c] < 0) {
        cls[c] = id;
        ++size;
      }
    }
    sizes.push_back(size);
  }
  return sizes;
}

struct IsoProfile {
  int order;
  bool abelian;
  int exponent;
  int center_size;
  int squares;
  std::vector<int> order_multiset;
  std::vector<int> derived_orders;
  std::vector<int> class_sizes;
  std::vector<std::pair<int, int>> class_keys;  // sorted (class size, element order)

  bool operator==(const IsoProfile&) const = default;
};

IsoProfile profile_of(const Group& g) {
  IsoProfile p;
  p.order = g.order();
  p.abelian = g.is_abelian();
  p.exponent = g.exponent();
  p.center_size = center(g).order();
  std::set<int> sq;
  for (int x = 0; x < g.order(); ++x) sq.insert(g.mul(x, x));
  p.squares = static_cast<int>(sq.size());
  p.order_multiset.reserve(g.order());
  for (int x = 0; x < g.order(); ++x) p.order_multiset.push_back(g.element_order(x));
  std::sort(p.order_multiset.begin(), p.order_multiset.end());
  for (const Subgroup& s : derived_series(g)) p.derived_orders.push_back(s.order());
  p.class_sizes = class_sizes_of(g);
  std::sort(p.class_sizes.begin(), p.class_sizes.end());
  return p;
}

// (class size, element order) key per element, shared candidate filter.
std::vector<std::pair<int, int>> element_keys(const Group& g) {
  std::vector<int> cls(g.order(), -1);
  std::vector<int> sizes;
  for (int x = 0; x < g.order(); ++x) {
    if (cls[x] >= 0) continue;
    int id = static_cast<int>(sizes.size());
    int size = 0;
    for (int t = 0; t < g.order(); ++t) {
      int c = g.conj(t, x);
      if (cls[c] < 0) {
        cls[c] = id;
        ++size;
      }
    }
    sizes.push_back(size);
  }
  std::vector<std::pair<int, int>> keys(g.order());
  for (int x = 0; x < g.order(); ++x) keys[x] = {sizes[cls[x]], g.element_order(x)};
  return keys;
}

// Try to extend gens->images to an isomorphism by closing under right
// multiplication; conflicts or collisions reject the branch.
bool extends_to_embedding(const Group& a, const Group& b, const std::vector<int>& gens,
                          const std::vector<int>& images) {
  std::vector<int> img(a.order(), -1);
  std::vector<char> hit(b.order(), 0);
  img[0] = 0;
  hit[0] = 1;
  std::vector<int> list{0};
  for (size_t d = 0; d < images.size(); ++d) {
    int ga = gens[d], gb = images[d];
    if (img[ga] == -1) {
      if (hit[gb]) return false;
      img[ga] = gb;
      hit[gb] = 1;
      list.push_back(ga);
    } else if (img[ga] != gb) {
      return false;
    }
  }
  for (size_t head = 0; head < list.size(); ++head) {
    for (size_t d = 0; d < images.size(); ++d) {
      int e = a.mul(list[head], gens[d]);
      int ie = b.mul(img[list[head]], img[gens[d]]);
      if (img[e] == -1) {
        if (hit[ie]) return false;
        img[e] = ie;
        hit[ie] = 1;
        list.push_back(e);
      } else if (img[e] != ie) {
        return false;
      }
    }
  }
  return true;
}

bool iso_search(const Group& a, const Group& b, const std::vector<int>& gens,
                const std::vector<std::vector<int>>& candidates, std::vector<int>& images,
                size_t depth) {
  if (depth == gens.size()) return true;
  for (int cand : candidates[depth]) {
    images.push_back(cand);
    if (extends_to_embedding(a, b, gens, images) &&
        iso_search(a, b, gens, candidates, images, depth + 1))
      return true;
    images.pop_back();
  }
  return false;
}

}  // namespace

bool is_isomorphic(const Group& a, const Group& b) {
  if (a.order() != b.order()) return false;
  if (a.order() > kLatticeCap)
    throw LatticeCapExceeded("isomorphism test above lattice cap");
  if (a.content_hash() == b.content_hash()) return true;
  if (profile_of(a) != profile_of(b)) return false;

  std::vector<int> gens = minimal_generating_sequence(a);
  std::vector<std::pair<int, int>> keys_a = element_keys(a);
  std::vector<std::pair<int, int>> keys_b = element_keys(b);
  std::vector<std::vector<int>> candidates(gens.size());
  for (size_t d = 0; d < gens.size(); ++d)
    for (int x = 0; x < b.order(); ++x)
      if (keys_b[x] == keys_a[gens[d]]) candidates[d].push_back(x);
  std::vector<int> images;
  return iso_search(a, b, gens, candidates, images, 0);
}

}  // namespace minrep

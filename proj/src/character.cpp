#include "minrep/character.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace minrep {

ConjugacyPartition conjugacy_partition(const Group& g) {
  ConjugacyPartition part;
  part.class_of.assign(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (part.class_of[x] >= 0) continue;
    int id = static_cast<int>(part.classes.size());
    std::vector<int> cls;
    for (int t = 0; t < g.order(); ++t) {
      int c = g.conj(t, x);
      if (part.class_of[c] < 0) {
        part.class_of[c] = id;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    part.classes.push_back(std::move(cls));
    part.representatives.push_back(x);
  }
  return part;
}

int Character::degree() const {
  if (values.empty() || !values[0].is_integer())
    throw InternalVerificationFailed("character degree is not a rational integer");
  return static_cast<int>(values[0].rational_value().get_num().get_si());
}

// ---------------------------------------------------------------------------
// F_q linear algebra

namespace {

struct Fq {
  long long q = 0;
  long long add(long long a, long long b) const { return (a + b) % q; }
  long long sub(long long a, long long b) const { return ((a - b) % q + q) % q; }
  long long mul(long long a, long long b) const { return (a * b) % q; }
  long long pow(long long b, long long e) const {
    b %= q;
    if (b < 0) b += q;
    long long r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }
  long long inv(long long a) const { return pow(a, q - 2); }
};

using Row = std::vector<long long>;
using Mat = std::vector<Row>;

// In-place reduced row echelon form; returns pivot column indices.
std::vector<int> rref(Mat& m, const Fq& fq) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pr = -1;
    for (int r = row; r < rows; ++r)
      if (m[r][col] != 0) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(m[row], m[pr]);
    long long p_inv = fq.inv(m[row][col]);
    for (int c = col; c < cols; ++c) m[row][c] = fq.mul(m[row][c], p_inv);
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      long long f = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] = fq.sub(m[r][c], fq.mul(f, m[row][c]));
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(pivots.size(), Row(cols, 0));
  return pivots;
}

// Canonical nullspace basis: one vector per free column, ascending.
Mat nullspace(Mat m, const Fq& fq) {
  int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  std::vector<int> pivots = rref(m, fq);
  std::vector<char> is_pivot(cols, 0);
  for (int p : pivots) is_pivot[p] = 1;
  Mat basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Row v(cols, 0);
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = fq.sub(0, m[r][f]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Characteristic polynomial (monic, coefficients low->high) via Hessenberg
// reduction and the standard last-column expansion recurrence.
Row charpoly(Mat h, const Fq& fq) {
  int n = static_cast<int>(h.size());
  for (int j = 0; j + 2 < n; ++j) {
    int piv = -1;
    for (int i = j + 1; i < n; ++i)
      if (h[i][j] != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != j + 1) {
      std::swap(h[piv], h[j + 1]);
      for (int r = 0; r < n; ++r) std::swap(h[r][piv], h[r][j + 1]);
    }
    long long d_inv = fq.inv(h[j + 1][j]);
    for (int i = j + 2; i < n; ++i) {
      if (h[i][j] == 0) continue;
      long long f = fq.mul(h[i][j], d_inv);
      for (int c = 0; c < n; ++c) h[i][c] = fq.sub(h[i][c], fq.mul(f, h[j + 1][c]));
      for (int r = 0; r < n; ++r) h[r][j + 1] = fq.add(h[r][j + 1], fq.mul(f, h[r][i]));
    }
  }
  std::vector<Row> p(n + 1);
  p[0] = {1};
  for (int m = 1; m <= n; ++m) {
    // p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[i-1][m-1] (prod subdiag) p_{i-1}
    Row cur(m + 1, 0);
    for (int t = 0; t < m; ++t) {
      cur[t + 1] = fq.add(cur[t + 1], p[m - 1][t]);
      cur[t] = fq.sub(cur[t], fq.mul(h[m - 1][m - 1], p[m - 1][t]));
    }
    long long subprod = 1;
    for (int i = m - 1; i >= 1; --i) {
      subprod = fq.mul(subprod, h[i][i - 1]);
      long long coeff = fq.mul(h[i - 1][m - 1], subprod);
      if (coeff == 0) continue;
      for (int t = 0; t < i; ++t) cur[t] = fq.sub(cur[t], fq.mul(coeff, p[i - 1][t]));
    }
    p[m] = std::move(cur);
  }
  return p[n];
}

struct Space {
  Mat basis;                // rows, RREF
  std::vector<int> pivots;  // coordinates of v in this basis = v at pivots
};

Space make_space(Mat rows, const Fq& fq) {
  Space s;
  s.pivots = rref(rows, fq);
  s.basis = std::move(rows);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// character table construction

namespace {

long long smallest_dixon_prime(int exponent, int order) {
  // smallest q = 1 mod e with q > 2 sqrt(order); q never divides the order
  // because every prime factor of the order divides the exponent.
  long long e = exponent;
  long long q = e + 1;
  while (true) {
    if (q * q > 4LL * order && q > 2 && is_prime(static_cast<int>(q))) return q;
    q += e;
  }
}

long long primitive_root(const Fq& fq) {
  std::vector<long long> prime_factors;
  long long m = fq.q - 1;
  for (long long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      prime_factors.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) prime_factors.push_back(m);
  for (long long g = 2; g < fq.q; ++g) {
    bool ok = true;
    for (long long p : prime_factors)
      if (fq.pow(g, (fq.q - 1) / p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw InternalVerificationFailed("no primitive root found");
}

struct LiftedCharacter {
  int degree = 0;
  std::vector<std::vector<long long>> values;  // per class, length phi(e)
};

void verify_table_exactly(const Group& g, const ConjugacyPartition& part,
                          const std::vector<LiftedCharacter>& chars,
                          const std::vector<int>& inv_class, int e) {
  int k = part.count();
  int phi = totient(e);
  long long maxc = 0;
  for (const auto& ch : chars)
    for (const auto& v : ch.values)
      for (long long c : v) maxc = std::max(maxc, std::llabs(c));
  // |sum of products| <= maxc^2 * phi * |G| must stay far below 2^63
  if (maxc > 3000000)
    throw CapExceeded("character value coefficients exceed the exact-verification budget");

  long long sum_sq = 0;
  for (const auto& ch : chars) sum_sq += static_cast<long long>(ch.degree) * ch.degree;
  if (sum_sq != g.order())
    throw InternalVerificationFailed("sum of squared degrees does not equal the group order");

  // chi(g^-1) == conj(chi(g)), computed by the exponent map i -> e - i.
  for (const auto& ch : chars) {
    for (int j = 0; j < k; ++j) {
      std::vector<long long> conj_poly(e, 0);
      for (int i = 0; i < phi; ++i) conj_poly[(e - i) % e] += ch.values[j][i];
      reduce_mod_cyclotomic(conj_poly, e);
      if (conj_poly != ch.values[inv_class[j]])
        throw InternalVerificationFailed("character is not conjugation-symmetric");
    }
  }

  std::vector<long long> acc(2 * phi, 0);
  auto accumulate_product = [&](const std::vector<long long>& x, const std::vector<long long>& y,
                                long long weight) {
    for (int i = 0; i < phi; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < phi; ++j) acc[i + j] += weight * x[i] * y[j];
    }
  };
  // rows: sum_j |C_j| chi_t(j) chi_u(j^-1) == delta * |G|
  for (size_t t = 0; t < chars.size(); ++t)
    for (size_t u = t; u < chars.size(); ++u) {
      acc.assign(2 * phi, 0);
      for (int j = 0; j < k; ++j)
        accumulate_product(chars[t].values[j], chars[u].values[inv_class[j]],
                           static_cast<long long>(part.classes[j].size()));
      reduce_mod_cyclotomic(acc, e);
      long long want = (t == u) ? g.order() : 0;
      for (int i = 0; i < phi; ++i)
        if (acc[i] != (i == 0 ? want : 0))
          throw InternalVerificationFailed("row orthogonality failed");
    }
  // columns: sum_t chi_t(i) chi_t(j^-1) == delta * |C_G(g_i)|
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      acc.assign(2 * phi, 0);
      for (const auto& ch : chars) accumulate_product(ch.values[i], ch.values[inv_class[j]], 1);
      reduce_mod_cyclotomic(acc, e);
      long long want = (i == j) ? g.order() / static_cast<long long>(part.classes[i].size()) : 0;
      for (int t = 0; t < phi; ++t)
        if (acc[t] != (t == 0 ? want : 0))
          throw InternalVerificationFailed("column orthogonality failed");
    }
}

}  // namespace

CharacterTable character_table(const Group& g) {
  if (g.order() > kTableCap) throw CapExceeded("character table above table cap");
  ConjugacyPartition part = conjugacy_partition(g);
  int k = part.count();
  int n = g.order();
  int e = g.exponent();
  Fq fq{smallest_dixon_prime(e, n)};
  long long theta = fq.pow(primitive_root(fq), (fq.q - 1) / e);  // fixed primitive e-th root

  std::vector<int> inv_class(k);
  for (int j = 0; j < k; ++j) inv_class[j] = part.class_of[g.inv(part.representatives[j])];
  std::vector<long long> class_size(k);
  for (int j = 0; j < k; ++j) class_size[j] = static_cast<long long>(part.classes[j].size());

  // Split the class algebra into common eigenspaces of the class matrices
  // M_i[j][l] = #{(x,y) : x in C_i, y in C_j, xy = z_l} / |C_l|.
  Mat full(k, Row(k, 0));
  for (int i = 0; i < k; ++i) full[i][i] = 1;
  std::vector<Space> spaces{make_space(std::move(full), fq)};
  for (int i = 1; i < k; ++i) {
    bool all_split = std::all_of(spaces.begin(), spaces.end(),
                                 [](const Space& s) { return s.basis.size() == 1; });
    if (all_split) break;

    Mat m(k, Row(k, 0));
    for (int x : part.classes[i])
      for (int y = 0; y < n; ++y) m[part.class_of[y]][part.class_of[g.mul(x, y)]] += 1;
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        if (m[j][l] % class_size[l] != 0)
          throw InternalVerificationFailed("class multiplication coefficient is not integral");
        m[j][l] = (m[j][l] / class_size[l]) % fq.q;
      }

    std::vector<Space> next;
    for (Space& w : spaces) {
      int r = static_cast<int>(w.basis.size());
      if (r == 1) {
        next.push_back(std::move(w));
        continue;
      }
      // columns of the restriction = coordinates of M * basis row
      Mat restriction(r, Row(r, 0));
      for (int b = 0; b < r; ++b) {
        Row image(k, 0);
        for (int row = 0; row < k; ++row) {
          long long s = 0;
          for (int col = 0; col < k; ++col)
            if (m[row][col] != 0 && w.basis[b][col] != 0) s += m[row][col] * w.basis[b][col] % fq.q;
          image[row] = s % fq.q;
        }
        Row coords(r);
        for (int c = 0; c < r; ++c) coords[c] = image[w.pivots[c]];
        for (int row = 0; row < k; ++row) {
          long long s = 0;
          for (int c = 0; c < r; ++c) s += coords[c] * w.basis[c][row] % fq.q;
          if (s % fq.q != image[row])
            throw InternalVerificationFailed("class matrix does not preserve the eigenspace");
        }
        for (int c = 0; c < r; ++c) restriction[c][b] = coords[c];
      }
      Row poly = charpoly(restriction, fq);
      int split_total = 0;
      for (long long lambda = 0; lambda < fq.q; ++lambda) {
        long long val = 0;
        for (int t = static_cast<int>(poly.size()) - 1; t >= 0; --t)
          val = (val * lambda + poly[t]) % fq.q;
        if (val != 0) continue;
        Mat shifted = restriction;
        for (int d = 0; d < r; ++d) shifted[d][d] = fq.sub(shifted[d][d], lambda);
        Mat core = nullspace(std::move(shifted), fq);
        if (core.empty()) continue;
        Mat lifted;
        for (const Row& coords : core) {
          Row v(k, 0);
          for (int c = 0; c < r; ++c) {
            if (coords[c] == 0) continue;
            for (int col = 0; col < k; ++col)
              v[col] = (v[col] + coords[c] * w.basis[c][col]) % fq.q;
          }
          lifted.push_back(std::move(v));
        }
        split_total += static_cast<int>(lifted.size());
        next.push_back(make_space(std::move(lifted), fq));
      }
      if (split_total != r)
        throw InternalVerificationFailed("eigenspace dimensions do not sum to the subspace dimension");
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != k)
    throw InternalVerificationFailed("common eigenspace count differs from the class count");

  // Per eigenvector: normalize at the identity class, recover the degree from
  // |G| / sum_j w_j w_{j'} / |C_j|, then lift each value to Q(zeta_e) via
  // root-of-unity multiplicities.
  std::vector<LiftedCharacter> chars;
  chars.reserve(k);
  for (const Space& s : spaces) {
    if (s.basis.size() != 1)
      throw InternalVerificationFailed("eigenspace splitting left a subspace of dimension > 1");
    Row w = s.basis[0];
    if (w[0] == 0)
      throw InternalVerificationFailed("central character vanishes at the identity class");
    long long norm = fq.inv(w[0]);
    for (long long& x : w) x = fq.mul(x, norm);

    long long s_val = 0;
    for (int j = 0; j < k; ++j)
      s_val = fq.add(s_val, fq.mul(fq.mul(w[j], w[inv_class[j]]), fq.inv(class_size[j] % fq.q)));
    int degree = 0;
    for (int d = 1; static_cast<long long>(d) * d <= n; ++d)
      if (fq.mul(fq.mul(d, d), s_val) == n % fq.q) {
        degree = d;
        break;
      }
    if (degree == 0)
      throw InternalVerificationFailed("no degree matches the eigenvector normalization");

    std::vector<long long> chi_mod(k);
    for (int j = 0; j < k; ++j)
      chi_mod[j] = fq.mul(fq.mul(degree, w[j]), fq.inv(class_size[j] % fq.q));

    LiftedCharacter lc;
    lc.degree = degree;
    lc.values.resize(k);
    for (int j = 0; j < k; ++j) {
      int rep = part.representatives[j];
      int nj = g.element_order(rep);
      long long theta_nj = fq.pow(theta, e / nj);
      long long theta_nj_inv = fq.inv(theta_nj);
      long long nj_inv = fq.inv(nj % fq.q);
      std::vector<long long> poly(e, 0);
      long long mult_sum = 0;
      for (int sdx = 0; sdx < nj; ++sdx) {
        long long acc = 0;
        long long tpow = 1;  // theta_nj^{-l s}
        long long step = fq.pow(theta_nj_inv, sdx);
        for (int l = 0; l < nj; ++l) {
          acc = fq.add(acc, fq.mul(chi_mod[part.class_of[g.power(rep, l)]], tpow));
          tpow = fq.mul(tpow, step);
        }
        long long mult = fq.mul(nj_inv, acc);
        if (mult > degree)
          throw InternalVerificationFailed("root-of-unity multiplicity exceeds the degree");
        mult_sum += mult;
        poly[(static_cast<long long>(e) / nj * sdx) % e] += mult;
      }
      if (mult_sum != degree)
        throw InternalVerificationFailed("root-of-unity multiplicities do not sum to the degree");
      reduce_mod_cyclotomic(poly, e);
      lc.values[j] = std::move(poly);
    }
    chars.push_back(std::move(lc));
  }

  std::sort(chars.begin(), chars.end(), [](const LiftedCharacter& a, const LiftedCharacter& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.values < b.values;
  });
  verify_table_exactly(g, part, chars, inv_class, e);

  CharacterTable table;
  table.group_hash = g.content_hash();
  table.partition = std::move(part);
  table.irreducibles.reserve(k);
  for (const LiftedCharacter& lc : chars) {
    Character ch;
    ch.group_hash = g.content_hash();
    ch.values.reserve(k);
    for (const auto& poly : lc.values) {
      std::vector<Rat> coeffs(poly.size());
      for (size_t i = 0; i < poly.size(); ++i) coeffs[i] = Rat(static_cast<long>(poly[i]));
      ch.values.push_back(Cyclotomic::from_poly(e, std::move(coeffs)));
    }
    if (ch.degree() != lc.degree)
      throw InternalVerificationFailed("lifted degree mismatch");
    if (g.order() % lc.degree != 0)
      throw InternalVerificationFailed("irreducible degree does not divide the group order");
    table.irreducibles.push_back(std::move(ch));
  }
  return table;
}

const CharacterTable& character_table_cached(const Group& g) {
  static std::map<uint64_t, std::unique_ptr<CharacterTable>> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(g.content_hash());
    if (it != cache.end()) return *it->second;
  }
  CharacterTable computed = character_table(g);
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(g.content_hash());
  if (it == cache.end())
    it = cache.emplace(g.content_hash(),
                       std::make_unique<CharacterTable>(std::move(computed))).first;
  return *it->second;
}

// ---------------------------------------------------------------------------
// character operations

Subgroup character_kernel(const Group& g, const Character& chi) {
  if (chi.group_hash != g.content_hash())
    throw BadParameter("character belongs to a different group");
  ConjugacyPartition part = conjugacy_partition(g);
  if (chi.values.size() != static_cast<size_t>(part.count()))
    throw BadParameter("character has the wrong number of class values");
  std::vector<int> members;
  for (int j = 0; j < part.count(); ++j)
    if (chi.values[j] == chi.values[0])
      members.insert(members.end(), part.classes[j].begin(), part.classes[j].end());
  std::sort(members.begin(), members.end());
  if (!is_subgroup_set(g, members))
    throw InternalVerificationFailed("character kernel is not a subgroup");
  Subgroup ker{g.content_hash(), std::move(members)};
  if (!is_normal(g, ker))
    throw InternalVerificationFailed("character kernel is not normal");
  return ker;
}

Character induce_character(const Group& g, const Subgroup& h, const Character& chi) {
  if (h.parent_hash != g.content_hash())
    throw NotASubgroup("subgroup belongs to a different parent group");
  Group hg = subgroup_as_group(g, h);
  if (chi.group_hash != hg.content_hash())
    throw BadParameter("character does not belong to the given subgroup");
  ConjugacyPartition part_g = conjugacy_partition(g);
  ConjugacyPartition part_h = conjugacy_partition(hg);
  if (chi.values.size() != static_cast<size_t>(part_h.count()))
    throw BadParameter("character has the wrong number of class values");
  std::vector<int> pos(g.order(), -1);
  for (size_t i = 0; i < h.members.size(); ++i) pos[h.members[i]] = static_cast<int>(i);

  Cyclotomic h_inv = Cyclotomic::from_rational(make_rat(1, h.order()));
  Character result;
  result.group_hash = g.content_hash();
  result.values.reserve(part_g.count());
  for (int c = 0; c < part_g.count(); ++c) {
    int rep = part_g.representatives[c];
    Cyclotomic sum;
    for (int x = 0; x < g.order(); ++x) {
      int y = g.mul(g.mul(g.inv(x), rep), x);
      if (pos[y] < 0) continue;
      sum = sum + chi.values[part_h.class_of[pos[y]]];
    }
    result.values.push_back(sum * h_inv);
  }
  return result;
}

Character restrict_character(const Group& g, const Character& chi, const Subgroup& h) {
  if (chi.group_hash != g.content_hash())
    throw BadParameter("character belongs to a different group");
  if (h.parent_hash != g.content_hash())
    throw NotASubgroup("subgroup belongs to a different parent group");
  Group hg = subgroup_as_group(g, h);
  ConjugacyPartition part_g = conjugacy_partition(g);
  ConjugacyPartition part_h = conjugacy_partition(hg);
  if (chi.values.size() != static_cast<size_t>(part_g.count()))
    throw BadParameter("character has the wrong number of class values");
  Character result;
  result.group_hash = hg.content_hash();
  result.values.reserve(part_h.count());
  for (int c = 0; c < part_h.count(); ++c) {
    int member = h.members[part_h.representatives[c]];
    result.values.push_back(chi.values[part_g.class_of[member]]);
  }
  return result;
}

Cyclotomic inner_product(const Group& g, const Character& a, const Character& b) {
  if (a.group_hash != g.content_hash() || b.group_hash != g.content_hash())
    throw BadParameter("inner product of characters of different groups");
  ConjugacyPartition part = conjugacy_partition(g);
  if (a.values.size() != static_cast<size_t>(part.count()) ||
      b.values.size() != static_cast<size_t>(part.count()))
    throw BadParameter("character has the wrong number of class values");
  Cyclotomic sum;
  for (int j = 0; j < part.count(); ++j) {
    Cyclotomic term = a.values[j] * b.values[j].conjugate();
    Cyclotomic weight = Cyclotomic::from_rational(Rat(static_cast<long>(part.classes[j].size())));
    sum = sum + term * weight;
  }
  return sum * Cyclotomic::from_rational(make_rat(1, g.order()));
}

bool is_irreducible(const Group& g, const Character& chi) {
  return inner_product(g, chi, chi) == Cyclotomic(1);
}

}  // namespace minrep

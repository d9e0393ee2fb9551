#include "minrep/repmodel.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace minrep {

CycloMatrix CycloMatrix::identity(int dim) {
  CycloMatrix m = zero(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = Cyclotomic(1);
  return m;
}

CycloMatrix CycloMatrix::diagonal(const std::vector<Cyclotomic>& diag) {
  CycloMatrix m = zero(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim; ++i) m.at(i, i) = diag[i];
  return m;
}

CycloMatrix CycloMatrix::zero(int dim) {
  CycloMatrix m;
  m.dim = dim;
  m.entries.assign(static_cast<size_t>(dim) * dim, Cyclotomic());
  return m;
}

CycloMatrix CycloMatrix::operator*(const CycloMatrix& o) const {
  if (dim != o.dim) throw BadParameter("matrix dimension mismatch");
  CycloMatrix r = zero(dim);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      const Cyclotomic& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < dim; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + a * o.at(k, j);
      }
    }
  return r;
}

bool CycloMatrix::operator==(const CycloMatrix& o) const {
  if (dim != o.dim) return false;
  for (size_t i = 0; i < entries.size(); ++i)
    if (!(entries[i] == o.entries[i])) return false;
  return true;
}

Cyclotomic CycloMatrix::trace() const {
  Cyclotomic t;
  for (int i = 0; i < dim; ++i) t = t + at(i, i);
  return t;
}

Cyclotomic CycloMatrix::det() const {
  CycloMatrix work = *this;
  Cyclotomic result(1);
  for (int col = 0; col < dim; ++col) {
    int pivot = -1;
    for (int r = col; r < dim; ++r)
      if (!work.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Cyclotomic();
    if (pivot != col) {
      for (int c = 0; c < dim; ++c) std::swap(work.at(pivot, c), work.at(col, c));
      result = -result;
    }
    result = result * work.at(col, col);
    Cyclotomic inv = work.at(col, col).inverse();
    for (int c = col; c < dim; ++c) work.at(col, c) = work.at(col, c) * inv;
    for (int r = col + 1; r < dim; ++r) {
      Cyclotomic f = work.at(r, col);
      if (f.is_zero()) continue;
      for (int c = col; c < dim; ++c) work.at(r, c) = work.at(r, c) - f * work.at(col, c);
    }
  }
  return result;
}

CycloMatrix CycloMatrix::inverse() const {
  CycloMatrix work = *this;
  CycloMatrix out = identity(dim);
  for (int col = 0; col < dim; ++col) {
    int pivot = -1;
    for (int r = col; r < dim; ++r)
      if (!work.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw BadParameter("matrix is singular");
    if (pivot != col)
      for (int c = 0; c < dim; ++c) {
        std::swap(work.at(pivot, c), work.at(col, c));
        std::swap(out.at(pivot, c), out.at(col, c));
      }
    Cyclotomic inv = work.at(col, col).inverse();
    for (int c = 0; c < dim; ++c) {
      work.at(col, c) = work.at(col, c) * inv;
      out.at(col, c) = out.at(col, c) * inv;
    }
    for (int r = 0; r < dim; ++r) {
      if (r == col) continue;
      Cyclotomic f = work.at(r, col);
      if (f.is_zero()) continue;
      for (int c = 0; c < dim; ++c) {
        work.at(r, c) = work.at(r, c) - f * work.at(col, c);
        out.at(r, c) = out.at(r, c) - f * out.at(col, c);
      }
    }
  }
  return out;
}

namespace {

void verify_homomorphism(const Group& g, const std::vector<CycloMatrix>& images) {
  if (g.order() <= kPairwiseVerifyCap) {
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        if (!(images[a] * images[b] == images[g.mul(a, b)]))
          throw InternalVerificationFailed("matrix images do not respect the multiplication table");
    return;
  }
  // Right-multiplication edges by a generating set prove the full property by
  // induction on word length.
  for (int s : minimal_generating_sequence(g))
    for (int a = 0; a < g.order(); ++a)
      if (!(images[a] * images[s] == images[g.mul(a, s)]))
        throw InternalVerificationFailed("matrix images do not respect the multiplication table");
}

}  // namespace

MatrixRepresentation induced_matrix_representation(const Group& g, const Subgroup& h,
                                                   const Character& chi) {
  if (h.parent_hash != g.content_hash())
    throw NotASubgroup("subgroup belongs to a different parent group");
  Group hg = subgroup_as_group(g, h);
  if (chi.group_hash != hg.content_hash())
    throw BadParameter("character does not belong to the given subgroup");
  if (chi.degree() != 1)
    throw NonlinearCharacter("induced monomial model needs a linear character");
  int index = g.order() / h.order();
  if (index > kMatrixDimCap)
    throw IndexCapExceeded("induced dimension " + std::to_string(index) + " above matrix cap " +
                           std::to_string(kMatrixDimCap));

  ConjugacyPartition part_h = conjugacy_partition(hg);
  std::vector<int> pos(g.order(), -1);
  for (size_t i = 0; i < h.members.size(); ++i) pos[h.members[i]] = static_cast<int>(i);

  std::vector<int> reps;  // least-index left coset representatives
  std::vector<int> coset_of(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (coset_of[x] >= 0) continue;
    int t = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int m : h.members) coset_of[g.mul(x, m)] = t;
  }
  if (static_cast<int>(reps.size()) != index)
    throw InternalVerificationFailed("coset count differs from the subgroup index");

  MatrixRepresentation rho;
  rho.group_hash = g.content_hash();
  rho.dim = index;
  rho.images.reserve(g.order());
  for (int x = 0; x < g.order(); ++x) {
    CycloMatrix m = CycloMatrix::zero(index);
    for (int j = 0; j < index; ++j) {
      int y = g.mul(x, reps[j]);
      int i = coset_of[y];
      int inside = g.mul(g.inv(reps[i]), y);
      if (pos[inside] < 0)
        throw InternalVerificationFailed("coset representative bookkeeping failed");
      m.at(i, j) = chi.values[part_h.class_of[pos[inside]]];
    }
    rho.images.push_back(std::move(m));
  }
  verify_homomorphism(g, rho.images);
  return rho;
}

Subgroup kernel_of_representation(const Group& g, const MatrixRepresentation& rho) {
  if (rho.group_hash != g.content_hash())
    throw BadParameter("representation belongs to a different group");
  if (static_cast<int>(rho.images.size()) != g.order())
    throw BadParameter("representation does not cover every element");
  CycloMatrix id = CycloMatrix::identity(rho.dim);
  std::vector<int> members;
  for (int x = 0; x < g.order(); ++x)
    if (rho.images[x] == id) members.push_back(x);
  if (!is_subgroup_set(g, members))
    throw InternalVerificationFailed("representation kernel is not a subgroup");
  Subgroup ker{g.content_hash(), std::move(members)};
  if (!is_normal(g, ker))
    throw InternalVerificationFailed("representation kernel is not normal");
  return ker;
}

bool is_faithful(const Group& g, const MatrixRepresentation& rho) {
  return kernel_of_representation(g, rho).order() == 1;
}

MatrixRepresentation direct_sum(const MatrixRepresentation& a, const MatrixRepresentation& b) {
  if (a.group_hash != b.group_hash)
    throw BadParameter("direct sum of representations of different groups");
  if (a.images.size() != b.images.size())
    throw BadParameter("representations cover different element counts");
  MatrixRepresentation r;
  r.group_hash = a.group_hash;
  r.dim = a.dim + b.dim;
  r.images.reserve(a.images.size());
  for (size_t x = 0; x < a.images.size(); ++x) {
    CycloMatrix m = CycloMatrix::zero(r.dim);
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j) m.at(i, j) = a.images[x].at(i, j);
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < b.dim; ++j) m.at(a.dim + i, a.dim + j) = b.images[x].at(i, j);
    r.images.push_back(std::move(m));
  }
  return r;
}

bool determinant_check(const MatrixRepresentation& rho) {
  for (const CycloMatrix& m : rho.images)
    if (!(m.det() == Cyclotomic(1))) return false;
  return true;
}

bool determinant_check(const MatrixRepresentation& rho, const std::vector<int>& elements) {
  for (int x : elements) {
    if (x < 0 || x >= static_cast<int>(rho.images.size()))
      throw BadParameter("element index out of range");
    if (!(rho.images[x].det() == Cyclotomic(1))) return false;
  }
  return true;
}

Character trace_character(const Group& g, const MatrixRepresentation& rho) {
  if (rho.group_hash != g.content_hash())
    throw BadParameter("representation belongs to a different group");
  if (static_cast<int>(rho.images.size()) != g.order())
    throw BadParameter("representation does not cover every element");
  ConjugacyPartition part = conjugacy_partition(g);
  Character chi;
  chi.group_hash = g.content_hash();
  chi.values.reserve(part.count());
  for (int c = 0; c < part.count(); ++c)
    chi.values.push_back(rho.images[part.representatives[c]].trace());
  for (int x = 0; x < g.order(); ++x)
    if (!(rho.images[x].trace() == chi.values[part.class_of[x]]))
      throw InternalVerificationFailed("trace is not constant on a conjugacy class");
  return chi;
}

namespace {

std::string matrix_key(const CycloMatrix& m) {
  std::string key = std::to_string(m.dim);
  for (const Cyclotomic& e : m.entries) {
    key += '|';
    key += e.reduced_to(e.minimal_conductor()).to_string();
  }
  return key;
}

}  // namespace

GeneratedMatrixGroup group_from_matrix_generators(const std::vector<CycloMatrix>& gens,
                                                  int cap) {
  if (gens.empty()) throw BadParameter("at least one generator matrix is required");
  int dim = gens[0].dim;
  if (dim < 1) throw BadParameter("generator matrices must be nonempty");
  for (const CycloMatrix& m : gens) {
    if (m.dim != dim) throw BadParameter("generator matrices have mixed dimensions");
    if (m.det().is_zero()) throw BadParameter("generator matrix is singular");
  }

  std::vector<CycloMatrix> elements{CycloMatrix::identity(dim)};
  std::map<std::string, int> index{{matrix_key(elements[0]), 0}};
  for (size_t u = 0; u < elements.size(); ++u) {
    for (const CycloMatrix& s : gens) {
      CycloMatrix w = elements[u] * s;
      std::string key = matrix_key(w);
      if (index.count(key)) continue;
      if (static_cast<int>(elements.size()) >= cap)
        throw ClosureExceedsCap("matrix closure exceeds cap " + std::to_string(cap));
      index.emplace(std::move(key), static_cast<int>(elements.size()));
      elements.push_back(std::move(w));
    }
  }

  int n = static_cast<int>(elements.size());
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto it = index.find(matrix_key(elements[a] * elements[b]));
      if (it == index.end())
        throw InternalVerificationFailed("matrix closure is not multiplication-closed");
      table[a * n + b] = it->second;
    }

  Group group = Group::from_mul_table(std::move(table), n);
  MatrixRepresentation rep;
  rep.group_hash = group.content_hash();
  rep.dim = dim;
  rep.images = std::move(elements);
  return GeneratedMatrixGroup{std::move(group), std::move(rep)};
}

GeneratedMatrixGroup imprimitive_model(const std::vector<CycloMatrix>& diagonals,
                                       bool use_3cycle) {
  std::vector<CycloMatrix> gens;
  for (const CycloMatrix& m : diagonals) {
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j)
        if (i != j && !m.at(i, j).is_zero())
          throw BadParameter("imprimitive model generators must be diagonal");
    for (int i = 0; i < m.dim; ++i) {
      // root-of-unity test: v^(2e) = 1 for conductor e
      const Cyclotomic& v = m.at(i, i);
      Cyclotomic power(1);
      for (int t = 0; t < 2 * v.conductor(); ++t) power = power * v;
      if (!(power == Cyclotomic(1)))
        throw BadParameter("diagonal entries must be roots of unity");
    }
    gens.push_back(m);
  }
  if (use_3cycle) {
    for (const CycloMatrix& m : gens)
      if (m.dim != 3) throw BadParameter("3-cycle permutation model needs dimension 3");
    CycloMatrix p = CycloMatrix::zero(3);
    p.at(1, 0) = Cyclotomic(1);
    p.at(2, 1) = Cyclotomic(1);
    p.at(0, 2) = Cyclotomic(1);
    gens.push_back(std::move(p));
  }
  if (gens.empty()) throw BadParameter("imprimitive model needs at least one generator");
  return group_from_matrix_generators(gens);
}

}  // namespace minrep

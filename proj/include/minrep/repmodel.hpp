#pragma once

#include <vector>

#include "minrep/character.hpp"

namespace minrep {

inline constexpr int kMatrixDimCap = 12;
// Representations on groups up to this order are verified on all |G|^2 pairs;
// larger ones by generator images plus Cayley-edge (defining relation) checks.
inline constexpr int kPairwiseVerifyCap = 200;

struct CycloMatrix {
  int dim = 0;
  std::vector<Cyclotomic> entries;  // row-major, dim*dim

  static CycloMatrix identity(int dim);
  static CycloMatrix diagonal(const std::vector<Cyclotomic>& diag);
  static CycloMatrix zero(int dim);

  const Cyclotomic& at(int r, int c) const { return entries[r * dim + c]; }
  Cyclotomic& at(int r, int c) { return entries[r * dim + c]; }

  CycloMatrix operator*(const CycloMatrix& o) const;
  bool operator==(const CycloMatrix& o) const;
  Cyclotomic trace() const;
  Cyclotomic det() const;        // exact fraction-free-ish Gaussian elimination
  CycloMatrix inverse() const;   // BadParameter when singular
};

struct MatrixRepresentation {
  uint64_t group_hash = 0;
  int dim = 0;
  std::vector<CycloMatrix> images;  // one per group element
};

// Monomial model of Ind_H^G(chi) for linear chi on least-index coset
// representatives; dimension [G:H] (capped at kMatrixDimCap).
MatrixRepresentation induced_matrix_representation(const Group& g, const Subgroup& h,
                                                   const Character& chi);

Subgroup kernel_of_representation(const Group& g, const MatrixRepresentation& rho);
bool is_faithful(const Group& g, const MatrixRepresentation& rho);
MatrixRepresentation direct_sum(const MatrixRepresentation& a, const MatrixRepresentation& b);

// True iff det(rho(g)) = 1 for all g (second form: for the listed elements
// only, e.g. the members of [G,G]).
bool determinant_check(const MatrixRepresentation& rho);
bool determinant_check(const MatrixRepresentation& rho, const std::vector<int>& elements);

Character trace_character(const Group& g, const MatrixRepresentation& rho);

// The abstract group generated by explicit invertible cyclotomic matrices,
// with its tautological representation.  Element order = BFS discovery order.
struct GeneratedMatrixGroup {
  Group group;
  MatrixRepresentation rep;
};
GeneratedMatrixGroup group_from_matrix_generators(const std::vector<CycloMatrix>& gens,
                                                  int cap = kTableCap);

// Group generated by the given diagonal matrices (entries must be roots of
// unity) and optionally the 3-cycle permutation matrix.
GeneratedMatrixGroup imprimitive_model(const std::vector<CycloMatrix>& diagonals,
                                       bool use_3cycle);

}  // namespace minrep

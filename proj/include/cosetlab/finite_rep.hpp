#pragma once

#include "cosetlab/coset.hpp"

namespace cosetlab {

using RVec = std::vector<Rat>;
using RMat = std::vector<std::vector<Rat>>;  // row-major, columns are basis vectors

/// A finite group together with its left regular representation, realized as
/// index permutations of the (sorted) element list. All linear algebra on it
/// is exact rational.
struct FiniteRep {
  std::vector<GroupElement> elements;  // sorted, closed under the operations

  std::size_t dim() const { return elements.size(); }
  long index_of(const GroupElement& g) const;
  /// perm[j] = index of s * elements[j].
  std::vector<long> left_perm(const GroupElement& s) const;
  /// pi(s) v.
  RVec apply(const GroupElement& s, const RVec& v) const;
};

FiniteRep regular_rep(const std::vector<GroupElement>& group_elements);

/// Exact basis (as matrix columns) of the joint fixed space of pi(s), s in S.
RMat invariant_subspace(const FiniteRep& rep, const std::vector<GroupElement>& S);

/// Exact basis of span{ v - pi(s)v : s in L, v in H^H }. Requires
/// H <= L <= N_G(H), verified on the given lists.
RMat coboundary_subspace(const FiniteRep& rep, const std::vector<GroupElement>& H,
                         const std::vector<GroupElement>& L);

struct SplitReport {
  std::size_t dim_h = 0, dim_l = 0, dim_cobnd = 0;
  bool dims_ok = false;    // dim H^H == dim H^L + dim Cobnd
  bool cross_ok = false;   // every <u, w> cross-term is exactly zero
  Rat max_abs_cross;       // largest |<u, w>| seen (exact; zero iff cross_ok)
};

/// Checks the orthogonal splitting H^H = H^L (+) Cobnd_{(L,H)} exactly.
SplitReport verify_splitting(const FiniteRep& rep, const std::vector<GroupElement>& H,
                             const std::vector<GroupElement>& L);

// Exact rational matrix helpers (columns are vectors).
std::size_t rank_of(RMat m);
/// Basis of the null space of m (columns).
RMat kernel_basis(const RMat& m);
/// Basis of the column space of m (columns).
RMat column_space(const RMat& m);
RMat mat_mul(const RMat& a, const RMat& b);
Rat dot(const RVec& a, const RVec& b);

}  // namespace cosetlab

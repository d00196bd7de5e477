#pragma once

#include "cosetlab/folner.hpp"
#include "cosetlab/posdef.hpp"

namespace cosetlab {

using CMat = std::vector<std::vector<RatCplx>>;
using DMat = std::vector<std::vector<std::complex<double>>>;

/// A finite window of coset keys together with the Hermitian matrix
/// M[i][j] = phi(x_i^{-1} x_j) for the canonical lifts x_i.
struct GramWindow {
  Group group;
  Subgroup h;
  std::vector<CosetKey> keys;
  bool exact = true;
  CMat mq;   // valid when exact
  DMat mf;   // always valid
};

GramWindow build_gram(const PosDefFn& phi, const std::vector<CosetKey>& window,
                      const Subgroup& h, const Group& g);

/// Window of all keys reachable from the identity coset by words of length at
/// most radius in the given generators (and their inverses). Orbit-closed up
/// to the boundary, see the window growth policy.
std::vector<CosetKey> orbit_window(const std::vector<GroupElement>& generators,
                                   const Subgroup& h, const Group& g, int radius,
                                   std::size_t budget = kDefaultBudget);

struct PsdVerdict {
  bool psd = false;
  bool exact_mode = true;
  std::vector<Rat> pivots;     // exact mode: elimination pivots in order
  long witness_index = -1;     // exact mode: row of the offending pivot
  Rat witness;                 // exact mode: the negative quantity found
  double min_eigenvalue = 0;   // float mode
};

/// Exact mode: LDL'-type elimination over the Gaussian rationals; PSD iff no
/// negative pivot and no zero pivot with a nonzero residual row. Float mode:
/// minimum eigenvalue against a 1e-9 tolerance relative to the trace.
PsdVerdict psd_check(const GramWindow& w);

/// Orthogonal (not normalized) basis of the GNS quotient: rational columns B
/// with B^H M B = diag(d), all d > 0, rank = #columns. The orthonormal basis
/// is B diag(d)^{-1/2}, materialized in doubles as bf.
struct GnsBasis {
  long rank = 0;
  bool exact_mode = true;
  CMat b;               // exact mode: window-size x rank
  std::vector<Rat> d;   // exact mode: positive squared norms
  DMat bf;              // orthonormalized columns, window-size x rank
};

GnsBasis gns_quotient(const GramWindow& w);

/// Matrix of the compression P pi_phi(g) P in the orthonormalized window
/// basis, plus the total squared leakage of the window vectors through P.
struct CompressedRep {
  bool exact_mode = true;
  CMat c;              // exact mode: scaled matrix, entries <pi(g) b_j, b_i>
  std::vector<Rat> d;  // exact mode: squared norms of the basis columns
  DMat a;              // orthonormal-basis matrix, c[i][j]/sqrt(d_i d_j)
  bool leakage_exact = true;
  Rat leakage_q;       // sum over window vectors of ||(I-P) pi(g) delta_x||^2
  double leakage_f = 0;
  /// Exact mode only: whether A^H A = I holds exactly (no leakage case).
  bool unitary_exact = false;
};

CompressedRep compressed_rep(const PosDefFn& phi, const GramWindow& w, const GroupElement& g);

/// <c, c'>_phi for coefficient vectors over the window, computed through the
/// Gram matrix; linear in the first argument. Exact windows only.
RatCplx gram_inner(const GramWindow& w, const std::vector<RatCplx>& x,
                   const std::vector<RatCplx>& y);

}  // namespace cosetlab

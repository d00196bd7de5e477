#pragma once

#include "cosetlab/posdef.hpp"
#include "cosetlab/sparse_vector.hpp"

namespace cosetlab {

/// Windowed double-coset density query: how much of F sits inside one set
/// x L y^{-1}, maximized over the finite windows X, Y of G/L.
struct DoubleCosetQuery {
  Subgroup l;
  std::vector<CosetKey> x, y;
  FiniteSet f;
};

/// max over (x,y) in X x Y of |F intersect x L y^{-1}| / |F|, exact.
/// Membership is tested as lift(x)^{-1} g lift(y) in L.
Rat thinness_ratio(const DoubleCosetQuery& q);

struct CorrelationReport {
  bool exact = true;
  Rat corr_sq;          // C^2, where C = |(1/|F|^2) sum_{s,t} phi(u^{-1}s^{-1}tu)|
  double corr_f = 0;    // C in doubles
  Rat bound;            // windowed thinness ratio
  bool certified = true;  // the window covers every coset of L meeting F u
  bool holds = false;     // C <= bound; asserted only when certified
};

/// The correlation estimate behind induced averages: phi is treated as zero
/// off L and must be bounded by one in absolute value. By default the bound's
/// window is extended to cover F u, which makes it a certified upper bound;
/// a caller-supplied window that misses cosets of F u downgrades the report
/// to uncertified instead of asserting.
CorrelationReport correlation_bound_check(const FiniteSet& f, const PosDefFn& phi,
                                          const Subgroup& l, const GroupElement& u,
                                          const std::vector<CosetKey>* x_window = nullptr);

struct FirmnessPoint {
  long n = 0;
  std::size_t size = 0;
  Rat worst_corr;  // max over the translates of ||A_{F u} delta_{eL}||^2
  Rat bound;       // certified thinness ratio of the covering window
};

/// Per-n certified bounds for averages of the representation induced from L:
/// the worst translate correlation against the windowed thinness ratio.
/// The identity translate is always included.
std::vector<FirmnessPoint> induced_firmness_curve(const FolnerGen& fgen, const Subgroup& l,
                                                  const std::vector<GroupElement>& translates,
                                                  long nmax,
                                                  std::size_t budget = kDefaultBudget);

}  // namespace cosetlab

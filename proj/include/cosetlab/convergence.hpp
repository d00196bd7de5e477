#pragma once

#include <map>

#include "cosetlab/sparse_vector.hpp"

namespace cosetlab {

enum class FcVerdict { FiniteCertified, InfiniteCertified, Inconclusive };

struct FcReport {
  FcVerdict verdict = FcVerdict::Inconclusive;
  bool closed = false;                      // explored orbit closed under all generators
  std::vector<GroupElement> orbit_sample;   // the conjugation orbit seen
};

/// Conjugation-class probe: breadth-first conjugation orbit under the given
/// generators, with analytic shortcuts for Heis (finite iff central), Z^d and
/// Z/m (abelian). Inconclusive is an honest verdict.
FcReport fc_probe(const GroupElement& g, const std::vector<GroupElement>& generators,
                  std::size_t budget);

enum class FirmBound { None, HeisCenterBox, ZdSliceBox, FullTrivial };

struct FirmPoint {
  long n = 0;
  std::size_t size = 0;
  Rat max_norm_sq;  // worst ||A_{F_n s} delta_{eH}||^2 over the translates
  Rat min_norm_sq;  // best; equal to max when firmness is exact
};

/// Norms of averages along right-translated Folner sets. Throws
/// InvariantFailure when the curve increases past n = 2 or breaks the
/// analytic bound.
std::vector<FirmPoint> firm_demo(const FolnerGen& fgen, const Subgroup& h,
                                 const std::vector<GroupElement>& translates, long nmax,
                                 FirmBound bound = FirmBound::None,
                                 std::size_t budget = kDefaultBudget);

struct TransferResult {
  bool conclusive = false;
  long chosen_n = 0;
  GroupElement t_m;
  Rat achieved;    // (1/|K|) sum_{s in K} phi(s t_m)
  Rat beta_hat;    // best Folner average seen while scanning
  Rat double_avg;  // the interchanged double average at chosen_n
  long scanned = 0;
};

/// Constructive translate search: scan F_n for n in [scan_nmin, scan_nmax]
/// for the best average beta (a finite-scale stand-in for the limiting
/// average), then return t_m in some scanned F_n whose K-average reaches
/// beta - 1/m. phi values outside the table end the scan; an unreachable
/// target is an inconclusive result, not an error.
TransferResult transfer_search(const std::map<GroupElement, Rat>& phi, const FolnerGen& fgen,
                               const FiniteSet& km, long m, long scan_nmin, long scan_nmax,
                               std::size_t budget = kDefaultBudget);

/// Functions on an m-point uniform probability space, pairwise orthonormal in
/// the induced inner product (1/m) sum_x f(x) g(x).
struct OrthonormalFamily {
  std::size_t points = 0;
  std::vector<std::vector<double>> funcs;
};

OrthonormalFamily scaled_basis_family(std::size_t m, std::size_t count);
/// Seeded Gaussian vectors, centered and orthonormalized; deterministic.
OrthonormalFamily random_orthonormal_family(std::size_t m, std::size_t count,
                                            std::uint64_t seed);

struct RajchmanPoint {
  long n = 0;
  bool square = false;
  double sup_avg = 0;  // max_x |(1/n) sum_{k<=n} phi_k(x)|
};

struct RajchmanReport {
  std::vector<RajchmanPoint> curve;
  bool bridging_ok = true;   // the two-step bound holds at every m <= nmax
  double max_inf_norm = 0;   // max_k ||phi_k||_inf
  double worst_bridge_slack = 0;  // min over m of (bound - observed)
};

/// The almost-everywhere averaging demo: the sup-curve along all indices with
/// square checkpoints, and the exact combinatorial bridging bound
/// m - n(m)^2 <= 1 + 2 sqrt(m) checked at every m.
RajchmanReport rajchman_demo(const OrthonormalFamily& fam, long nmax);

struct RigidReport {
  enum class Verdict { Rigid, ConstantNotRigid, Counterexample };
  Verdict verdict = Verdict::Counterexample;
  RatCplx off_orbit_value;  // c = phi((1,1))
  std::string detail;
};

/// Checks that a right-scale-invariant table on the affine group of Q is
/// constant on the two translation orbits {0} and Q \ {0}; the rigid pattern
/// additionally has vanishing off-orbit value.
RigidReport rigid_orbit_check(const std::vector<std::pair<GroupElement, RatCplx>>& table);

}  // namespace cosetlab

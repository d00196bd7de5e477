#pragma once

#include <map>

#include "cosetlab/folner.hpp"

namespace cosetlab {

/// Finitely supported map CosetKey -> exact complex scalar; the computational
/// stand-in for vectors in l^2(G/H). Zero entries are never stored.
class SparseVector {
 public:
  SparseVector() = default;

  static SparseVector delta(const CosetKey& k) {
    SparseVector v;
    v.entries_[k] = RatCplx(1);
    return v;
  }

  const std::map<CosetKey, RatCplx>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  void add(const CosetKey& k, const RatCplx& z) {
    if (z.is_zero()) return;
    auto it = entries_.find(k);
    if (it == entries_.end()) {
      entries_.emplace(k, z);
    } else {
      it->second += z;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  SparseVector operator+(const SparseVector& o) const {
    SparseVector r = *this;
    for (const auto& [k, z] : o.entries_) r.add(k, z);
    return r;
  }
  SparseVector operator-(const SparseVector& o) const {
    SparseVector r = *this;
    for (const auto& [k, z] : o.entries_) r.add(k, -z);
    return r;
  }
  SparseVector scaled(const RatCplx& c) const {
    SparseVector r;
    if (c.is_zero()) return r;
    for (const auto& [k, z] : entries_) r.entries_.emplace(k, z * c);
    return r;
  }

  /// Sum_k v(k) conj(w(k)); linear in the first argument.
  friend RatCplx inner(const SparseVector& v, const SparseVector& w) {
    RatCplx acc;
    const auto& a = v.entries_;
    const auto& b = w.entries_;
    auto it = a.begin();
    auto jt = b.begin();
    while (it != a.end() && jt != b.end()) {
      int c = cmp(it->first, jt->first);
      if (c < 0) ++it;
      else if (c > 0) ++jt;
      else acc += it->second * jt->second.conj(), ++it, ++jt;
    }
    return acc;
  }

  Rat norm_sq() const {
    Rat acc(0);
    for (const auto& [k, z] : entries_) acc += z.abs_sq();
    return acc;
  }

 private:
  std::map<CosetKey, RatCplx> entries_;
};

/// pi(s) v in the left regular representation on l^2(G/H); unitary.
SparseVector apply(const GroupElement& s, const SparseVector& v, const Subgroup& h);

/// (1/|F|) sum_{s in F} pi(s) v, exact.
SparseVector average(const FiniteSet& f, const SparseVector& v, const Subgroup& h);

/// || (1/|F|) sum_{s in F} pi(s) delta_{eH} ||^2 = (1/|F|^2) sum_k m_k^2 where
/// m_k counts the elements of F in the coset with key k. Exact; multiplicity
/// counting is a hash-grouping pass.
Rat avg_norm_sq_delta(const FiniteSet& f, const Subgroup& h);

/// avg_norm_sq_delta of the right translate F s, without materializing it.
Rat avg_norm_sq_delta_translated(const FiniteSet& f, const GroupElement& s,
                                 const Subgroup& h);

/// Multiplicity of each coset key among the elements of F, sorted by key.
std::vector<std::pair<CosetKey, std::size_t>> coset_multiplicities(const FiniteSet& f,
                                                                   const Subgroup& h);

/// The spectral regime a catalog triple (G, H, L) declares for the L-action
/// on coset keys: either every orbit is infinite (so the invariant projection
/// kills every finitely supported vector) or the orbits are finite testbed
/// objects that can be enumerated.
enum class OrbitRegime { AllInfinite, Finite };

OrbitRegime declared_orbit_regime(const Group& g, const Subgroup& h, const Subgroup& l);

/// P_L delta_k on a finite-orbit testbed: uniform mass on the L-orbit of k.
/// Triples declared AllInfinite have P_L = 0 on the delta span and refuse.
SparseVector project_invariant_delta(const CosetKey& k, const Subgroup& h,
                                     const Subgroup& l, const Group& g);

struct WeakPairingPoint {
  long n = 0;
  std::size_t set_size = 0;
  RatCplx pairing;  // <w, A_{F_n} v>
};

/// The weak-convergence curve <w, A_{F_n} v> for n = 1..nmax.
std::vector<WeakPairingPoint> weak_pairing_curve(const FolnerGen& fgen, const SparseVector& v,
                                                 const SparseVector& w, const Subgroup& h,
                                                 long nmax,
                                                 std::size_t budget = kDefaultBudget);

}  // namespace cosetlab

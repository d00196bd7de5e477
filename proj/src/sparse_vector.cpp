#include "cosetlab/sparse_vector.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace cosetlab {

SparseVector apply(const GroupElement& s, const SparseVector& v, const Subgroup& h) {
  SparseVector out;
  for (const auto& [k, z] : v.entries()) out.add(act_left(s, k, h), z);
  return out;
}

SparseVector average(const FiniteSet& f, const SparseVector& v, const Subgroup& h) {
  if (f.empty()) throw UsageError("average over an empty set");
  SparseVector acc;
  for (const auto& s : f)
    for (const auto& [k, z] : v.entries()) acc.add(act_left(s, k, h), z);
  return acc.scaled(RatCplx(Rat(1, static_cast<unsigned long>(f.size()))));
}

std::vector<std::pair<CosetKey, std::size_t>> coset_multiplicities(const FiniteSet& f,
                                                                   const Subgroup& h) {
  std::vector<CosetKey> keys;
  keys.reserve(f.size());
  for (const auto& s : f) keys.push_back(canonicalize(s, h));
  std::sort(keys.begin(), keys.end());
  std::vector<std::pair<CosetKey, std::size_t>> runs;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i + 1;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    runs.emplace_back(std::move(keys[i]), j - i);
    i = j;
  }
  return runs;
}

Rat avg_norm_sq_delta(const FiniteSet& f, const Subgroup& h) {
  return avg_norm_sq_delta_translated(f, identity(group_of(f.elements().front())), h);
}

Rat avg_norm_sq_delta_translated(const FiniteSet& f, const GroupElement& s,
                                 const Subgroup& h) {
  if (f.empty()) throw UsageError("avg_norm_sq_delta over an empty set");
  std::unordered_map<CosetKey, std::size_t, KeyHash> counts;
  counts.reserve(f.size() * 2);
  bool translate = !s.is_identity();
  for (const auto& g : f)
    ++counts[canonicalize(translate ? multiply(g, s) : g, h)];
  Int sum_sq = 0;
  for (const auto& [k, m] : counts) sum_sq += Int(m) * Int(m);
  Rat r(sum_sq, Int(f.size()) * Int(f.size()));
  r.canonicalize();
  return r;
}

OrbitRegime declared_orbit_regime(const Group& g, const Subgroup& h, const Subgroup& l) {
  if (l.tag == SubgroupTag::FiniteSubgroup) return OrbitRegime::Finite;
  if (g.tag == GroupTag::Cyc || g.tag == GroupTag::Pair) return OrbitRegime::Finite;
  if (h.tag == SubgroupTag::FullGroup) return OrbitRegime::Finite;  // one key
  if (l.tag == SubgroupTag::Trivial) return OrbitRegime::Finite;    // singleton orbits
  switch (g.tag) {
    case GroupTag::Heis:
    case GroupTag::IntVec:
    case GroupTag::LampBS:
    case GroupTag::AffQ:
    case GroupTag::FinPerm:
      // every remaining catalog subgroup L acts with infinite orbits on the
      // keys of the supported quotients
      return OrbitRegime::AllInfinite;
    default: throw ConfigError("no declared orbit regime for " + g.name());
  }
}

SparseVector project_invariant_delta(const CosetKey& k, const Subgroup& h,
                                     const Subgroup& l, const Group& g) {
  OrbitRegime regime = declared_orbit_regime(g, h, l);
  if (regime == OrbitRegime::AllInfinite)
    throw PreconditionError("the declared L-orbits are infinite: P_L vanishes on deltas");
  std::vector<GroupElement> acting;
  if (l.tag == SubgroupTag::FiniteSubgroup) acting = l.elements;
  else if (l.tag == SubgroupTag::Trivial) acting = {identity(g)};
  else if (l.tag == SubgroupTag::FullGroup && g.tag == GroupTag::Cyc)
    for (long x = 0; x < g.m; ++x) acting.push_back(make_cyc(g.m, x));
  else throw ConfigError("no finite orbit enumeration for " + l.name());
  std::set<CosetKey> orbit;
  for (const auto& s : acting) orbit.insert(act_left(s, k, h));
  SparseVector out;
  Rat w(1, orbit.size());
  w.canonicalize();
  for (const auto& key : orbit) out.add(key, RatCplx(w));
  return out;
}

std::vector<WeakPairingPoint> weak_pairing_curve(const FolnerGen& fgen, const SparseVector& v,
                                                 const SparseVector& w, const Subgroup& h,
                                                 long nmax, std::size_t budget) {
  std::vector<WeakPairingPoint> out;
  for (long n = 1; n <= nmax; ++n) {
    FiniteSet f = generate(fgen, n, budget);
    out.push_back({n, f.size(), inner(w, average(f, v, h))});
  }
  return out;
}

}  // namespace cosetlab

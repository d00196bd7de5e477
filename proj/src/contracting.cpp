#include "cosetlab/contracting.hpp"

#include <algorithm>
#include <set>

namespace cosetlab {

ContractingTriple ContractingTriple::hnn_zp(int p) {
  if (p < 2) throw ConfigError("hnn triple wants p >= 2");
  ContractingTriple t;
  t.kind = Kind::HNN_Zp;
  t.p = p;
  return t;
}

ContractingTriple ContractingTriple::sym(std::vector<long> K) {
  ContractingTriple t;
  t.kind = Kind::SYM;
  t.fixed = Subgroup::sym_fix(std::move(K)).fix;
  return t;
}

Group ContractingTriple::group() const {
  return kind == Kind::HNN_Zp ? Group::lamp_bs(p) : Group::fin_perm();
}

Subgroup ContractingTriple::subgroup_h() const {
  return kind == Kind::HNN_Zp ? Subgroup::lamp_base() : Subgroup::sym_fix(fixed);
}

Subgroup ContractingTriple::subgroup_l() const {
  return kind == Kind::HNN_Zp ? Subgroup::lamp_normal() : Subgroup::full_group();
}

std::string ContractingTriple::name() const {
  if (kind == Kind::HNN_Zp) return "hnn[p=" + std::to_string(p) + "]";
  std::string s = "sym{";
  for (std::size_t i = 0; i < fixed.size(); ++i) s += (i ? "," : "") + std::to_string(fixed[i]);
  return s + "}";
}

/// Exponent of p in the denominator of a reduced element of Z[1/p].
static long denominator_exponent(const Rat& b, int p) {
  Int den = b.get_den();
  long k = 0;
  while (den > 1) {
    if (den % p != 0)
      throw PreconditionError("element outside Z[1/p]: " + rat_str(b));
    den /= p;
    ++k;
  }
  return k;
}

GroupElement contract(const ContractingTriple& t, const FiniteSet& f) {
  Subgroup l = t.subgroup_l();
  Subgroup h = t.subgroup_h();
  for (const auto& g : f)
    if (!member(g, l))
      throw PreconditionError("contract: set leaves L at " + encode(g));

  GroupElement conj = identity(t.group());
  if (t.kind == ContractingTriple::Kind::HNN_Zp) {
    long k = 0;
    for (const auto& g : f) k = std::max(k, denominator_exponent(g.rb, t.p));
    conj = make_lamp_bs(t.p, Rat(0), Int(k));
  } else {
    // Fresh points: the |K| least naturals untouched by F, mapped onto K by
    // an involution fixing the overlap.
    std::set<long> supp;
    for (const auto& g : f)
      for (long x : g.perm.support()) supp.insert(x);
    std::vector<long> fresh;
    for (long c = 0; static_cast<long>(fresh.size()) < static_cast<long>(t.fixed.size()); ++c)
      if (!supp.count(c)) fresh.push_back(c);
    std::vector<long> m_only, k_only;
    for (long m : fresh)
      if (std::find(t.fixed.begin(), t.fixed.end(), m) == t.fixed.end()) m_only.push_back(m);
    for (long k : t.fixed)
      if (std::find(fresh.begin(), fresh.end(), k) == fresh.end()) k_only.push_back(k);
    std::vector<std::pair<long, long>> swaps;
    for (std::size_t i = 0; i < m_only.size(); ++i) {
      swaps.emplace_back(m_only[i], k_only[i]);
      swaps.emplace_back(k_only[i], m_only[i]);
    }
    conj = make_fin_perm(std::move(swaps));
  }

  for (const auto& g : f)
    if (!member(conjugate(conj, g), h))
      throw InvariantFailure("contract produced an uncertified conjugator");
  return conj;
}

std::vector<FlabbyPoint> flabby_demo(const ContractingTriple& t, const FolnerGen& fgen,
                                     long nmax, std::size_t budget) {
  Subgroup h = t.subgroup_h();
  Group g = t.group();
  CosetKey ekey = identity_key(h, g);

  std::vector<FlabbyPoint> out;
  for (long n = 1; n <= nmax; ++n) {
    FiniteSet f = generate(fgen, n, budget);
    FlabbyPoint pt;
    pt.n = n;
    pt.size = f.size();
    pt.conjugator = contract(t, f);
    // s_n^{-1} F s_n lands in H for s_n = conjugator^{-1}, so the average of
    // the translated set collapses onto a single coset.
    GroupElement s = inverse(pt.conjugator);
    FiniteSet fs = f.translated_right(s);
    pt.norm_sq = avg_norm_sq_delta(fs, h);
    std::size_t hits = 0;
    for (const auto& [k, m] : coset_multiplicities(fs, h))
      if (k == ekey) hits = m;
    pt.weak_pairing = Rat(static_cast<unsigned long>(hits),
                          static_cast<unsigned long>(f.size()));
    pt.weak_pairing.canonicalize();
    pt.distinct_keys = coset_multiplicities(f, h).size();
    out.push_back(std::move(pt));
  }
  return out;
}

Int index_growth(const ContractingTriple& t, long k) {
  if (t.kind != ContractingTriple::Kind::HNN_Zp)
    throw UsageError("index_growth is defined for the HNN triples");
  if (k < 0) throw UsageError("index_growth wants k >= 0");
  // Coset keys of H inside H_k = p^{-k} Z: enumerate j / p^k.
  Subgroup h = t.subgroup_h();
  Int den = pow_int(Int(t.p), static_cast<unsigned long>(k));
  std::set<CosetKey> keys;
  for (Int j = 0; j < den; ++j) {
    Rat b(j, den);
    b.canonicalize();
    keys.insert(canonicalize(make_lamp_bs(t.p, b, Int(0)), h));
  }
  return Int(static_cast<unsigned long>(keys.size()));
}

}  // namespace cosetlab

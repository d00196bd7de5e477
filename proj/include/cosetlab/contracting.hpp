#pragma once

#include "cosetlab/sparse_vector.hpp"

namespace cosetlab {

/// A triple (G, H, L) with H < L in which every finite subset of L can be
/// conjugated into H by a single group element.
struct ContractingTriple {
  enum class Kind {
    HNN_Zp,  // (Z[1/p] x| Z, H = integer translations, L = all translations)
    SYM,     // (Sym_0(N), H = pointwise stabilizer of K, L = Sym_0(N))
  };

  Kind kind = Kind::HNN_Zp;
  int p = 2;
  std::vector<long> fixed;  // SYM: the finite set K

  static ContractingTriple hnn_zp(int p);
  static ContractingTriple sym(std::vector<long> K);

  Group group() const;
  Subgroup subgroup_h() const;
  Subgroup subgroup_l() const;
  std::string name() const;
};

/// Smallest certified conjugator t with t F t^{-1} inside H. Every conjugate
/// is membership-checked before returning.
GroupElement contract(const ContractingTriple& t, const FiniteSet& f);

struct FlabbyPoint {
  long n = 0;
  std::size_t size = 0;
  GroupElement conjugator;    // t from contract(F_n)
  Rat norm_sq;                // ||A_{F_n s_n} delta_{eH}||^2 with s_n = t^{-1}
  Rat weak_pairing;           // <delta_{eH}, A_{F_n s_n} delta_{eH}>, real
  std::size_t distinct_keys;  // coset keys hit by F_n itself; grows with n
};

/// The mean-theorem failure demo: along the contracted translates the
/// averaged norm stays exactly one while the weak pairing dies off.
std::vector<FlabbyPoint> flabby_demo(const ContractingTriple& t, const FolnerGen& fgen,
                                     long nmax, std::size_t budget = kDefaultBudget);

/// [H_k : H] for the ascending HNN chain, computed by enumerating coset keys;
/// equals p^k by the multiplicativity of the index.
Int index_growth(const ContractingTriple& t, long k);

}  // namespace cosetlab

#pragma once

#include <variant>
#include <vector>

#include "cosetlab/group.hpp"

namespace cosetlab {

enum class SubgroupTag {
  Trivial,
  SymFix,        // {s in Sym_0(N) : s fixes K pointwise}
  LampBSBase,    // {(n,0) : n integer} inside Z[1/p] x| Z
  LampBSNormal,  // {(b,0) : b in Z[1/p]}
  HeisCenter,    // {(0,0,c)}
  ZdSlice,       // {v : v_j = 0} inside Z^d
  AffScale,      // {0} x| Q^* inside AffQ
  FullGroup,
  FiniteSubgroup,  // explicit element list
};

/// Descriptor of a subgroup of one of the catalog groups, with an exact
/// membership test and canonical left-coset representatives.
struct Subgroup {
  SubgroupTag tag = SubgroupTag::Trivial;
  std::vector<long> fix;               // SymFix: the fixed finite set K (sorted)
  int slice = 0;                       // ZdSlice: zeroed coordinate, 0-based
  std::vector<GroupElement> elements;  // FiniteSubgroup (sorted, closed)

  static Subgroup trivial();
  static Subgroup sym_fix(std::vector<long> K);
  static Subgroup lamp_base();
  static Subgroup lamp_normal();
  static Subgroup heis_center();
  static Subgroup zd_slice(int coord_1based, int d);
  static Subgroup aff_scale();
  static Subgroup full_group();
  /// Closure of the given generators under multiplication (finite testbeds).
  static Subgroup finite(std::vector<GroupElement> generators);

  std::string name() const;
};

bool member(const GroupElement& g, const Subgroup& h);

/// Canonical representative of the left coset gH. Equal keys iff equal cosets.
struct CosetKey {
  std::variant<std::monostate, std::vector<Int>, std::vector<Rat>, GroupElement> v;
};

int cmp(const CosetKey& a, const CosetKey& b);
inline bool operator==(const CosetKey& a, const CosetKey& b) { return cmp(a, b) == 0; }
inline bool operator!=(const CosetKey& a, const CosetKey& b) { return cmp(a, b) != 0; }
inline bool operator<(const CosetKey& a, const CosetKey& b) { return cmp(a, b) < 0; }
std::size_t hash_key(const CosetKey& k);
std::string encode(const CosetKey& k);

struct KeyHash {
  std::size_t operator()(const CosetKey& k) const { return hash_key(k); }
};

CosetKey canonicalize(const GroupElement& g, const Subgroup& h);
/// A lift x with canonicalize(x, h) == k; canonicalize(lift) is the identity
/// on keys produced by canonicalize.
GroupElement lift(const CosetKey& k, const Subgroup& h, const Group& g);
CosetKey identity_key(const Subgroup& h, const Group& g);

/// Left action of the ambient group: sK = canonicalize(s * lift(K)).
CosetKey act_left(const GroupElement& s, const CosetKey& k, const Subgroup& h);

/// True when s lies in the supported part of the normalizer of h.
bool in_supported_normalizer(const GroupElement& s, const Subgroup& h);

/// Right action xH -> x s^{-1} H of the normalizer, which commutes with the
/// left action. Only the catalog cases that need it are supported.
CosetKey act_right_cH(const GroupElement& s, const CosetKey& k, const Subgroup& h);

}  // namespace cosetlab

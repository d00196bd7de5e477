#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cosetlab/scalar.hpp"

namespace cosetlab {

enum class GroupTag { IntVec, Heis, LampBS, AffQ, FinPerm, Cyc, Pair };

struct Group;
using GroupPtr = std::shared_ptr<const Group>;

/// Descriptor of one of the catalog groups (parameters only, no elements).
struct Group {
  GroupTag tag;
  int d = 0;    // IntVec dimension
  int p = 0;    // LampBS prime
  long m = 0;   // Cyc modulus
  GroupPtr inner;  // Pair component group

  static Group int_vec(int d);
  static Group heis();
  static Group lamp_bs(int p);
  static Group aff_q();
  static Group fin_perm();
  static Group cyc(long m);
  static Group pair(Group inner);

  bool operator==(const Group& o) const;
  std::string name() const;
};

struct GroupElement;

/// Finitely supported permutation of the naturals, stored as the sorted list
/// of (point, image) pairs with all fixed points pruned.
struct PermData {
  std::vector<std::pair<long, long>> map;

  long apply(long x) const;
  std::vector<long> support() const;
};

/// A value in one of the catalog groups. Immutable; all operations are pure.
struct GroupElement {
  GroupTag tag;
  std::vector<Int> vec;                  // IntVec coordinates; Heis (a,b,c)
  Rat rb;                                // LampBS b / AffQ b
  Rat ra;                                // AffQ a
  Int ia;                                // LampBS a
  int p = 0;                             // LampBS prime
  PermData perm;                         // FinPerm
  long cm = 0, cr = 0;                   // Cyc modulus / residue
  std::shared_ptr<const GroupElement> px, py;  // Pair components

  bool same_kind(const GroupElement& o) const;
  bool is_identity() const;
};

GroupElement identity(const Group& g);

GroupElement make_int_vec(std::vector<Int> coords);
GroupElement make_heis(Int a, Int b, Int c);
GroupElement make_lamp_bs(int p, Rat b, Int a);
GroupElement make_aff_q(Rat b, Rat a);
GroupElement make_fin_perm(std::vector<std::pair<long, long>> map);
/// Permutation from a list of cycles (each cycle maps entry i to entry i+1).
GroupElement make_perm_cycles(const std::vector<std::vector<long>>& cycles);
GroupElement make_cyc(long m, long r);
GroupElement make_pair(GroupElement x, GroupElement y);

GroupElement multiply(const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupElement& x);
/// t x t^{-1}.
GroupElement conjugate(const GroupElement& t, const GroupElement& x);

int cmp(const GroupElement& a, const GroupElement& b);
inline bool operator==(const GroupElement& a, const GroupElement& b) { return cmp(a, b) == 0; }
inline bool operator!=(const GroupElement& a, const GroupElement& b) { return cmp(a, b) != 0; }
inline bool operator<(const GroupElement& a, const GroupElement& b) { return cmp(a, b) < 0; }

std::size_t hash_element(const GroupElement& g);

/// Canonical text encoding, e.g. "heis:1,0,0", "lampbs[p=2]:3/2,1",
/// "perm:(0 2 1)". Round-trips through parse_element.
std::string encode(const GroupElement& g);
GroupElement parse_element(const std::string& text);

/// Group an element belongs to (reconstructed from the value).
Group group_of(const GroupElement& g);

struct ElementHash {
  std::size_t operator()(const GroupElement& g) const { return hash_element(g); }
};

}  // namespace cosetlab

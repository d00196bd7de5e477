#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cosetlab/coset.hpp"

namespace cosetlab {

/// An explicit finite set of group elements (a Folner set F_n), kept sorted
/// and duplicate-free.
class FiniteSet {
 public:
  FiniteSet() = default;
  explicit FiniteSet(std::vector<GroupElement> elems);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<GroupElement>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(const GroupElement& g) const;
  FiniteSet translated_right(const GroupElement& s) const;  // F s
  FiniteSet translated_left(const GroupElement& s) const;   // s F
  FiniteSet inverted() const;                               // elementwise inverse

 private:
  std::vector<GroupElement> elems_;
};

/// Generator of a Folner sequence for one of the catalog groups.
struct FolnerGen {
  enum class Kind {
    Box,            // [0,n)^d or [-n,n]^d in Z^d
    HeisBox,        // |a|,|b| <= n, |c| <= n^2
    SymBall,        // all of Sym({0..n})
    LampLine,       // {(j/p^n, 0) : 0 <= j < p^{2n}} inside Z[1/p] x| Z
    AffTransBox,    // {(j, 1) : 0 <= j < n} inside AffQ
    AffScaleGeom,   // {(0, p^j) : 0 <= j < n} inside AffQ
    CycInterval,    // {0..n-1 mod m} in Z/m
    SemidirectRect, // elementwise product B_n A_n of two generators
    TranslatedSeq,  // base(n) * s_n for a fixed list of right translations
  };

  Kind kind = Kind::Box;
  int d = 1;
  bool centered = false;  // Box: [-n,n]^d instead of [0,n)^d
  long scale = 1;         // Box: [0, scale*n)^d / [-scale*n, scale*n]^d
  int p = 2;              // LampLine / AffScaleGeom
  long m = 0;             // CycInterval modulus
  std::shared_ptr<const FolnerGen> bgen, agen;  // SemidirectRect
  std::shared_ptr<const FolnerGen> base;        // TranslatedSeq
  std::vector<GroupElement> translations;       // TranslatedSeq: s_1, s_2, ...

  static FolnerGen box(int d, bool centered = false, long scale = 1);
  static FolnerGen heis_box();
  static FolnerGen sym_ball();
  static FolnerGen lamp_line(int p);
  static FolnerGen aff_trans_box();
  static FolnerGen aff_scale_geom(int p);
  static FolnerGen cyc_interval(long m);
  static FolnerGen semidirect_rect(FolnerGen b, FolnerGen a);
  static FolnerGen translated(FolnerGen base, std::vector<GroupElement> translations);

  std::string name() const;
  /// Group the generated sets live in.
  Group group() const;
};

constexpr std::size_t kDefaultBudget = 1000000;

/// Number of elements generate() would produce, without materializing.
Int generate_count(const FolnerGen& gen, long n);
FiniteSet generate(const FolnerGen& gen, long n, std::size_t budget = kDefaultBudget);

/// |F delta tF| / |F|, exact.
Rat left_defect(const FiniteSet& f, const GroupElement& t);
/// |F delta Ft| / |F|, exact.
Rat right_defect(const FiniteSet& f, const GroupElement& t);
/// |F delta c_H(s)F| / |F| for a finite set of coset keys, exact.
Rat triple_right_defect(const std::vector<CosetKey>& f, const GroupElement& s,
                        const Subgroup& h);

/// Centered quotient box [-n,n]^2 of coset keys in Heis/center or Z^d/slice
/// style quotients; the right-Folner sets of the triple setting.
std::vector<CosetKey> quotient_box_keys(const Subgroup& h, const Group& g, long n);
/// One lift per key of the quotient box.
FiniteSet quotient_box_lifts(const Subgroup& h, const Group& g, long n);

struct AdversarialResult {
  bool found = false;
  GroupElement s;       // the conjugator, valid when found
  Rat ratio;            // |F delta F (s t s^{-1})| / |F|
  long candidates_tried = 0;
};

/// Searches for s making F and F (s t s^{-1}) disjoint, so that the right
/// defect of the translated set F s at t is exactly 2. Structured candidates
/// per group; exhausting the budget is reported, not thrown.
AdversarialResult adversarial_translate(const FiniteSet& f, const GroupElement& t,
                                        long search_budget);

}  // namespace cosetlab

#pragma once

#include <complex>

#include "cosetlab/coset.hpp"

namespace cosetlab {

/// Value of a positive-definite function: exact Gaussian rational when the
/// evaluation stays in the 4th roots of unity, double precision otherwise.
struct PhiValue {
  bool exact = true;
  RatCplx q;
  std::complex<double> f;

  static PhiValue of(RatCplx z) {
    PhiValue v;
    v.exact = true;
    v.f = z.to_double();
    v.q = std::move(z);
    return v;
  }
  static PhiValue approx(std::complex<double> z) {
    PhiValue v;
    v.exact = false;
    v.f = z;
    return v;
  }
};

enum class DualAction { None, Inversion, TimesP };

/// One atom of a finitely supported measure on the dual torus: a rational
/// point theta (mod 1 per coordinate) with a positive rational weight.
struct TorusAtom {
  std::vector<Rat> theta;
  Rat weight;
};

/// A positive-definite, bi-H-invariant function on one of the catalog groups;
/// the GNS seed.
struct PosDefFn {
  enum class Kind { DeltaAtH, ConstOne, BochnerTorus };

  Kind kind = Kind::ConstOne;
  Subgroup h;  // declared bi-invariance
  std::vector<TorusAtom> atoms;
  DualAction action = DualAction::None;
  int p = 0;  // TimesP multiplier

  static PosDefFn delta_at(Subgroup h);
  static PosDefFn const_one(Subgroup h);
  /// Sum of character atoms sum_j w_j e^{2 pi i <theta_j, n>} on the normal
  /// part of Z^d or Z[1/p] x| Z, constant in the acting part. Weights must be
  /// positive with total one and the atom set invariant under the declared
  /// dual action.
  static PosDefFn bochner(std::vector<TorusAtom> atoms, DualAction action, int p = 0);

  std::string name() const;
};

PhiValue evaluate(const PosDefFn& phi, const GroupElement& g);

}  // namespace cosetlab

#include "cosetlab/posdef.hpp"

#include <algorithm>
#include <cmath>

namespace cosetlab {

PosDefFn PosDefFn::delta_at(Subgroup h) {
  PosDefFn f;
  f.kind = Kind::DeltaAtH;
  f.h = std::move(h);
  return f;
}

PosDefFn PosDefFn::const_one(Subgroup h) {
  PosDefFn f;
  f.kind = Kind::ConstOne;
  f.h = std::move(h);
  return f;
}

static std::vector<std::pair<std::vector<Rat>, Rat>> normalized_atoms(
    const std::vector<TorusAtom>& atoms) {
  std::vector<std::pair<std::vector<Rat>, Rat>> out;
  for (const auto& a : atoms) {
    std::vector<Rat> t;
    for (const Rat& x : a.theta) t.push_back(rat_mod1(x));
    out.emplace_back(std::move(t), a.weight);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    for (std::size_t i = 0; i < a.first.size(); ++i)
      if (int c = cmp_rat(a.first[i], b.first[i])) return c < 0;
    return cmp_rat(a.second, b.second) < 0;
  });
  return out;
}

PosDefFn PosDefFn::bochner(std::vector<TorusAtom> atoms, DualAction action, int p) {
  if (atoms.empty()) throw ConfigError("bochner wants at least one atom");
  std::size_t dim = atoms.front().theta.size();
  Rat total(0);
  for (const auto& a : atoms) {
    if (a.theta.size() != dim) throw ConfigError("bochner atoms of mixed dimension");
    if (a.weight <= 0) throw ConfigError("bochner weights must be positive");
    total += a.weight;
  }
  if (total != 1) throw ConfigError("bochner weights must sum to one, got " + rat_str(total));
  if (action == DualAction::TimesP) {
    if (p < 2) throw ConfigError("times-p dual action wants p >= 2");
    if (dim != 1) throw ConfigError("times-p dual action is one-dimensional");
  }

  // The atom multiset must be invariant under the declared dual action.
  if (action != DualAction::None) {
    auto base = normalized_atoms(atoms);
    std::vector<TorusAtom> mapped;
    for (const auto& a : atoms) {
      TorusAtom b;
      b.weight = a.weight;
      for (const Rat& x : a.theta)
        b.theta.push_back(action == DualAction::Inversion ? rat_mod1(-x) : rat_mod1(x * p));
      mapped.push_back(std::move(b));
    }
    if (normalized_atoms(mapped) != base)
      throw ConfigError("bochner atom set is not invariant under the declared dual action");
  }

  PosDefFn f;
  f.kind = Kind::BochnerTorus;
  f.h = Subgroup::trivial();
  f.atoms = std::move(atoms);
  f.action = action;
  f.p = p;
  return f;
}

std::string PosDefFn::name() const {
  switch (kind) {
    case Kind::DeltaAtH: return "delta-at-" + h.name();
    case Kind::ConstOne: return "const-one";
    case Kind::BochnerTorus: return "bochner[" + std::to_string(atoms.size()) + " atoms]";
  }
  return "?";
}

/// e^{2 pi i x} for rational x: exact on quarter-integers, double otherwise.
static PhiValue unit_character(const Rat& x) {
  Rat r = rat_mod1(x);
  if (r.get_den() == 1) return PhiValue::of(RatCplx(Rat(1)));
  if (r.get_den() == 2) return PhiValue::of(RatCplx(Rat(-1)));
  if (r.get_den() == 4)
    return PhiValue::of(r.get_num() == 1 ? RatCplx(Rat(0), Rat(1)) : RatCplx(Rat(0), Rat(-1)));
  double a = 6.283185307179586476925286766559 * r.get_d();
  return PhiValue::approx({std::cos(a), std::sin(a)});
}

PhiValue evaluate(const PosDefFn& phi, const GroupElement& g) {
  switch (phi.kind) {
    case PosDefFn::Kind::DeltaAtH:
      return PhiValue::of(RatCplx(Rat(member(g, phi.h) ? 1 : 0)));
    case PosDefFn::Kind::ConstOne: return PhiValue::of(RatCplx(Rat(1)));
    case PosDefFn::Kind::BochnerTorus: {
      std::size_t dim = phi.atoms.front().theta.size();
      std::vector<Rat> n;
      if (g.tag == GroupTag::IntVec) {
        if (g.vec.size() != dim)
          throw UsageError("bochner atom dimension does not match the group");
        for (const Int& z : g.vec) n.emplace_back(z);
      } else if (g.tag == GroupTag::LampBS) {
        if (dim != 1) throw UsageError("bochner on LampBS wants one-dimensional atoms");
        n.push_back(g.rb);  // constant in the acting coordinate
      } else {
        throw UsageError("bochner evaluation outside Z^d or Z[1/p] x| Z");
      }
      bool exact = true;
      RatCplx acc_q;
      std::complex<double> acc_f{0.0, 0.0};
      for (const auto& atom : phi.atoms) {
        Rat x(0);
        for (std::size_t i = 0; i < dim; ++i) x += atom.theta[i] * n[i];
        PhiValue c = unit_character(x);
        acc_f += c.f * atom.weight.get_d();
        if (c.exact && exact) acc_q += c.q * atom.weight;
        else exact = false;
      }
      if (exact) return PhiValue::of(acc_q);
      PhiValue v = PhiValue::approx(acc_f);
      return v;
    }
  }
  throw UsageError("unknown positive definite function");
}

}  // namespace cosetlab

#include "cosetlab/coset.hpp"

#include <algorithm>
#include <set>

namespace cosetlab {

Subgroup Subgroup::trivial() { return Subgroup{}; }

Subgroup Subgroup::sym_fix(std::vector<long> K) {
  if (K.empty()) throw ConfigError("SymFix wants a nonempty fixed set");
  std::sort(K.begin(), K.end());
  K.erase(std::unique(K.begin(), K.end()), K.end());
  Subgroup s;
  s.tag = SubgroupTag::SymFix;
  s.fix = std::move(K);
  return s;
}

Subgroup Subgroup::lamp_base() {
  Subgroup s;
  s.tag = SubgroupTag::LampBSBase;
  return s;
}

Subgroup Subgroup::lamp_normal() {
  Subgroup s;
  s.tag = SubgroupTag::LampBSNormal;
  return s;
}

Subgroup Subgroup::heis_center() {
  Subgroup s;
  s.tag = SubgroupTag::HeisCenter;
  return s;
}

Subgroup Subgroup::zd_slice(int coord_1based, int d) {
  if (coord_1based < 1 || coord_1based > d)
    throw ConfigError("ZdSlice coordinate out of range");
  Subgroup s;
  s.tag = SubgroupTag::ZdSlice;
  s.slice = coord_1based - 1;
  return s;
}

Subgroup Subgroup::aff_scale() {
  Subgroup s;
  s.tag = SubgroupTag::AffScale;
  return s;
}

Subgroup Subgroup::full_group() {
  Subgroup s;
  s.tag = SubgroupTag::FullGroup;
  return s;
}

Subgroup Subgroup::finite(std::vector<GroupElement> generators) {
  if (generators.empty()) throw ConfigError("finite subgroup wants generators");
  std::set<GroupElement> closure(generators.begin(), generators.end());
  closure.insert(identity(group_of(generators.front())));
  for (const auto& g : generators) closure.insert(inverse(g));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<GroupElement> cur(closure.begin(), closure.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (closure.insert(multiply(a, b)).second) grew = true;
    if (closure.size() > 100000) throw BudgetError("finite subgroup closure too large");
  }
  Subgroup s;
  s.tag = SubgroupTag::FiniteSubgroup;
  s.elements.assign(closure.begin(), closure.end());
  return s;
}

std::string Subgroup::name() const {
  switch (tag) {
    case SubgroupTag::Trivial: return "trivial";
    case SubgroupTag::SymFix: {
      std::string s = "symfix{";
      for (std::size_t i = 0; i < fix.size(); ++i) s += (i ? "," : "") + std::to_string(fix[i]);
      return s + "}";
    }
    case SubgroupTag::LampBSBase: return "lampbs-base";
    case SubgroupTag::LampBSNormal: return "lampbs-normal";
    case SubgroupTag::HeisCenter: return "heis-center";
    case SubgroupTag::ZdSlice: return "zd-slice[" + std::to_string(slice + 1) + "]";
    case SubgroupTag::AffScale: return "aff-scale";
    case SubgroupTag::FullGroup: return "full";
    case SubgroupTag::FiniteSubgroup:
      return "finite[" + std::to_string(elements.size()) + "]";
  }
  return "?";
}

bool member(const GroupElement& g, const Subgroup& h) {
  switch (h.tag) {
    case SubgroupTag::Trivial: return g.is_identity();
    case SubgroupTag::SymFix: {
      if (g.tag != GroupTag::FinPerm) throw UsageError("SymFix membership outside Sym_0(N)");
      for (long k : h.fix)
        if (g.perm.apply(k) != k) return false;
      return true;
    }
    case SubgroupTag::LampBSBase: {
      if (g.tag != GroupTag::LampBS) throw UsageError("LampBSBase membership outside LampBS");
      return g.ia == 0 && g.rb.get_den() == 1;
    }
    case SubgroupTag::LampBSNormal: {
      if (g.tag != GroupTag::LampBS) throw UsageError("LampBSNormal membership outside LampBS");
      return g.ia == 0;
    }
    case SubgroupTag::HeisCenter: {
      if (g.tag != GroupTag::Heis) throw UsageError("HeisCenter membership outside Heis");
      return g.vec[0] == 0 && g.vec[1] == 0;
    }
    case SubgroupTag::ZdSlice: {
      if (g.tag != GroupTag::IntVec) throw UsageError("ZdSlice membership outside Z^d");
      if (h.slice >= static_cast<int>(g.vec.size())) throw UsageError("ZdSlice out of range");
      return g.vec[h.slice] == 0;
    }
    case SubgroupTag::AffScale: {
      if (g.tag != GroupTag::AffQ) throw UsageError("AffScale membership outside AffQ");
      return g.rb == 0;
    }
    case SubgroupTag::FullGroup: return true;
    case SubgroupTag::FiniteSubgroup:
      return std::binary_search(h.elements.begin(), h.elements.end(), g);
  }
  return false;
}

int cmp(const CosetKey& a, const CosetKey& b) {
  if (a.v.index() != b.v.index()) return a.v.index() < b.v.index() ? -1 : 1;
  switch (a.v.index()) {
    case 0: return 0;
    case 1: {
      const auto& x = std::get<1>(a.v);
      const auto& y = std::get<1>(b.v);
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (int c = mpz_cmp(x[i].get_mpz_t(), y[i].get_mpz_t())) return c;
      return 0;
    }
    case 2: {
      const auto& x = std::get<2>(a.v);
      const auto& y = std::get<2>(b.v);
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (int c = cmp_rat(x[i], y[i])) return c;
      return 0;
    }
    default: return cmp(std::get<3>(a.v), std::get<3>(b.v));
  }
}

std::size_t hash_key(const CosetKey& k) {
  std::size_t h = k.v.index() * 0x9e3779b97f4a7c15ULL;
  switch (k.v.index()) {
    case 0: return h;
    case 1:
      for (const Int& z : std::get<1>(k.v)) h = hash_combine(h, hash_int(z));
      return h;
    case 2:
      for (const Rat& q : std::get<2>(k.v)) h = hash_combine(h, hash_rat(q));
      return h;
    default: return hash_combine(h, hash_element(std::get<3>(k.v)));
  }
}

std::string encode(const CosetKey& k) {
  switch (k.v.index()) {
    case 0: return "k:()";
    case 1: {
      std::string s = "k:";
      const auto& v = std::get<1>(k.v);
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
      return s;
    }
    case 2: {
      std::string s = "k:";
      const auto& v = std::get<2>(k.v);
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rat_str(v[i]);
      return s;
    }
    default: return "k{" + encode(std::get<3>(k.v)) + "}";
  }
}

static CosetKey int_key(std::vector<Int> v) { return CosetKey{std::move(v)}; }
static CosetKey rat_key(std::vector<Rat> v) { return CosetKey{std::move(v)}; }

CosetKey canonicalize(const GroupElement& g, const Subgroup& h) {
  switch (h.tag) {
    case SubgroupTag::Trivial: return CosetKey{g};
    case SubgroupTag::SymFix: {
      if (g.tag != GroupTag::FinPerm) throw UsageError("SymFix key outside Sym_0(N)");
      std::vector<Int> images;
      images.reserve(h.fix.size());
      for (long k : h.fix) images.emplace_back(g.perm.apply(k));
      return int_key(std::move(images));
    }
    case SubgroupTag::LampBSBase: {
      if (g.tag != GroupTag::LampBS) throw UsageError("LampBSBase key outside LampBS");
      // gH = {(b + p^a n, a)}: reduce b modulo the lattice p^a Z into [0, p^a).
      Rat lattice = pow_rat(g.p, g.ia);
      Rat r = g.rb - Rat(rat_floor(g.rb / lattice)) * lattice;
      r.canonicalize();
      return rat_key({Rat(g.ia), r});
    }
    case SubgroupTag::LampBSNormal: {
      if (g.tag != GroupTag::LampBS) throw UsageError("LampBSNormal key outside LampBS");
      return int_key({g.ia});
    }
    case SubgroupTag::HeisCenter: {
      if (g.tag != GroupTag::Heis) throw UsageError("HeisCenter key outside Heis");
      return int_key({g.vec[0], g.vec[1]});
    }
    case SubgroupTag::ZdSlice: {
      if (g.tag != GroupTag::IntVec) throw UsageError("ZdSlice key outside Z^d");
      if (h.slice >= static_cast<int>(g.vec.size())) throw UsageError("ZdSlice out of range");
      return int_key({g.vec[h.slice]});
    }
    case SubgroupTag::AffScale: {
      if (g.tag != GroupTag::AffQ) throw UsageError("AffScale key outside AffQ");
      return rat_key({g.rb});
    }
    case SubgroupTag::FullGroup: return CosetKey{};
    case SubgroupTag::FiniteSubgroup: {
      // Minimum of the finite coset in element order.
      if (h.elements.empty()) throw UsageError("empty finite subgroup");
      GroupElement best = multiply(g, h.elements.front());
      for (std::size_t i = 1; i < h.elements.size(); ++i) {
        GroupElement cur = multiply(g, h.elements[i]);
        if (cur < best) best = std::move(cur);
      }
      return CosetKey{std::move(best)};
    }
  }
  throw ConfigError("unsupported (G,H) combination");
}

GroupElement lift(const CosetKey& k, const Subgroup& h, const Group& g) {
  switch (h.tag) {
    case SubgroupTag::Trivial: return std::get<3>(k.v);
    case SubgroupTag::SymFix: {
      // Injective tuple (images of K); complete it to a finitely supported
      // permutation by matching the leftover sources with leftover images.
      const auto& images = std::get<1>(k.v);
      std::vector<std::pair<long, long>> map;
      std::vector<long> src = h.fix, dst;
      for (const Int& z : images) dst.push_back(z.get_si());
      std::vector<long> extra_src, extra_dst;
      for (long d : dst)
        if (std::find(src.begin(), src.end(), d) == src.end()) extra_dst.push_back(d);
      for (long s : src)
        if (std::find(dst.begin(), dst.end(), s) == dst.end()) extra_src.push_back(s);
      // map K -> images, then images\K -> K\images to close the bijection
      for (std::size_t i = 0; i < src.size(); ++i) map.emplace_back(src[i], dst[i]);
      std::sort(extra_src.begin(), extra_src.end());
      std::sort(extra_dst.begin(), extra_dst.end());
      for (std::size_t i = 0; i < extra_src.size(); ++i)
        map.emplace_back(extra_dst[i], extra_src[i]);
      return make_fin_perm(std::move(map));
    }
    case SubgroupTag::LampBSBase: {
      const auto& v = std::get<2>(k.v);
      return make_lamp_bs(g.p, v[1], Int(v[0].get_num()));
    }
    case SubgroupTag::LampBSNormal: {
      const auto& v = std::get<1>(k.v);
      return make_lamp_bs(g.p, Rat(0), v[0]);
    }
    case SubgroupTag::HeisCenter: {
      const auto& v = std::get<1>(k.v);
      return make_heis(v[0], v[1], 0);
    }
    case SubgroupTag::ZdSlice: {
      const auto& v = std::get<1>(k.v);
      std::vector<Int> coords(g.d, Int(0));
      coords[h.slice] = v[0];
      return make_int_vec(std::move(coords));
    }
    case SubgroupTag::AffScale: {
      const auto& v = std::get<2>(k.v);
      return make_aff_q(v[0], Rat(1));
    }
    case SubgroupTag::FullGroup: return identity(g);
    case SubgroupTag::FiniteSubgroup: return std::get<3>(k.v);
  }
  throw ConfigError("unsupported (G,H) combination");
}

CosetKey identity_key(const Subgroup& h, const Group& g) {
  return canonicalize(identity(g), h);
}

CosetKey act_left(const GroupElement& s, const CosetKey& k, const Subgroup& h) {
  return canonicalize(multiply(s, lift(k, h, group_of(s))), h);
}

bool in_supported_normalizer(const GroupElement& s, const Subgroup& h) {
  switch (h.tag) {
    case SubgroupTag::Trivial: return true;
    case SubgroupTag::HeisCenter: return s.tag == GroupTag::Heis;      // central, normal
    case SubgroupTag::ZdSlice: return s.tag == GroupTag::IntVec;      // abelian
    case SubgroupTag::LampBSNormal: return s.tag == GroupTag::LampBS;  // normal
    case SubgroupTag::FiniteSubgroup: {
      for (const auto& e : h.elements)
        if (!member(conjugate(s, e), h)) return false;
      return true;
    }
    default: return false;
  }
}

CosetKey act_right_cH(const GroupElement& s, const CosetKey& k, const Subgroup& h) {
  if (!in_supported_normalizer(s, h))
    throw PreconditionError("element outside the supported normalizer of " + h.name());
  return canonicalize(multiply(lift(k, h, group_of(s)), inverse(s)), h);
}

}  // namespace cosetlab

#include "cosetlab/folner.hpp"

#include <algorithm>

namespace cosetlab {

FiniteSet::FiniteSet(std::vector<GroupElement> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  auto last = std::unique(elems_.begin(), elems_.end());
  if (last != elems_.end()) throw UsageError("FiniteSet has duplicate elements");
}

bool FiniteSet::contains(const GroupElement& g) const {
  return std::binary_search(elems_.begin(), elems_.end(), g);
}

FiniteSet FiniteSet::translated_right(const GroupElement& s) const {
  std::vector<GroupElement> out;
  out.reserve(elems_.size());
  for (const auto& g : elems_) out.push_back(multiply(g, s));
  return FiniteSet(std::move(out));
}

FiniteSet FiniteSet::translated_left(const GroupElement& s) const {
  std::vector<GroupElement> out;
  out.reserve(elems_.size());
  for (const auto& g : elems_) out.push_back(multiply(s, g));
  return FiniteSet(std::move(out));
}

FiniteSet FiniteSet::inverted() const {
  std::vector<GroupElement> out;
  out.reserve(elems_.size());
  for (const auto& g : elems_) out.push_back(inverse(g));
  return FiniteSet(std::move(out));
}

FolnerGen FolnerGen::box(int d, bool centered, long scale) {
  if (scale < 1) throw ConfigError("box scale must be positive");
  FolnerGen g;
  g.kind = Kind::Box;
  g.d = d;
  g.centered = centered;
  g.scale = scale;
  return g;
}

FolnerGen FolnerGen::heis_box() {
  FolnerGen g;
  g.kind = Kind::HeisBox;
  return g;
}

FolnerGen FolnerGen::sym_ball() {
  FolnerGen g;
  g.kind = Kind::SymBall;
  return g;
}

FolnerGen FolnerGen::lamp_line(int p) {
  FolnerGen g;
  g.kind = Kind::LampLine;
  g.p = p;
  return g;
}

FolnerGen FolnerGen::aff_trans_box() {
  FolnerGen g;
  g.kind = Kind::AffTransBox;
  return g;
}

FolnerGen FolnerGen::aff_scale_geom(int p) {
  FolnerGen g;
  g.kind = Kind::AffScaleGeom;
  g.p = p;
  return g;
}

FolnerGen FolnerGen::cyc_interval(long m) {
  FolnerGen g;
  g.kind = Kind::CycInterval;
  g.m = m;
  return g;
}

FolnerGen FolnerGen::semidirect_rect(FolnerGen b, FolnerGen a) {
  FolnerGen g;
  g.kind = Kind::SemidirectRect;
  g.bgen = std::make_shared<const FolnerGen>(std::move(b));
  g.agen = std::make_shared<const FolnerGen>(std::move(a));
  return g;
}

FolnerGen FolnerGen::translated(FolnerGen base, std::vector<GroupElement> translations) {
  if (translations.empty()) throw ConfigError("TranslatedSeq wants at least one translation");
  FolnerGen g;
  g.kind = Kind::TranslatedSeq;
  g.base = std::make_shared<const FolnerGen>(std::move(base));
  g.translations = std::move(translations);
  return g;
}

std::string FolnerGen::name() const {
  switch (kind) {
    case Kind::Box: {
      std::string s0 = scale == 1 ? "n" : std::to_string(scale) + "n";
      return (centered ? "box[-" + s0 + ":" + s0 + "]^" : "box[0:" + s0 + ")^") +
             std::to_string(d);
    }
    case Kind::HeisBox: return "heis-box";
    case Kind::SymBall: return "sym-ball";
    case Kind::LampLine: return "lamp-line[p=" + std::to_string(p) + "]";
    case Kind::AffTransBox: return "aff-trans-box";
    case Kind::AffScaleGeom: return "aff-scale-geom[p=" + std::to_string(p) + "]";
    case Kind::CycInterval: return "cyc-interval[m=" + std::to_string(m) + "]";
    case Kind::SemidirectRect: return "rect(" + bgen->name() + " x " + agen->name() + ")";
    case Kind::TranslatedSeq: return "translated(" + base->name() + ")";
  }
  return "?";
}

Group FolnerGen::group() const {
  switch (kind) {
    case Kind::Box: return Group::int_vec(d);
    case Kind::HeisBox: return Group::heis();
    case Kind::SymBall: return Group::fin_perm();
    case Kind::LampLine: return Group::lamp_bs(p);
    case Kind::AffTransBox: return Group::aff_q();
    case Kind::AffScaleGeom: return Group::aff_q();
    case Kind::CycInterval: return Group::cyc(m);
    case Kind::SemidirectRect: return bgen->group();
    case Kind::TranslatedSeq: return base->group();
  }
  throw UsageError("unknown generator");
}

Int generate_count(const FolnerGen& gen, long n) {
  if (n < 1) throw UsageError("generate wants n >= 1");
  switch (gen.kind) {
    case FolnerGen::Kind::Box: {
      Int side = gen.centered ? 2 * gen.scale * n + 1 : gen.scale * n;
      return pow_int(side, static_cast<unsigned long>(gen.d));
    }
    case FolnerGen::Kind::HeisBox: return Int(2 * n + 1) * (2 * n + 1) * (2 * n * n + 1);
    case FolnerGen::Kind::SymBall: {
      Int f = 1;
      for (long i = 2; i <= n + 1; ++i) f *= i;
      return f;
    }
    case FolnerGen::Kind::LampLine: return pow_int(Int(gen.p), static_cast<unsigned long>(2 * n));
    case FolnerGen::Kind::AffTransBox: return Int(n);
    case FolnerGen::Kind::AffScaleGeom: return Int(n);
    case FolnerGen::Kind::CycInterval: return Int(std::min(n, gen.m));
    case FolnerGen::Kind::SemidirectRect:
      return generate_count(*gen.bgen, n) * generate_count(*gen.agen, n);
    case FolnerGen::Kind::TranslatedSeq: return generate_count(*gen.base, n);
  }
  throw UsageError("unknown generator");
}

static void check_budget(const FolnerGen& gen, long n, std::size_t budget) {
  Int count = generate_count(gen, n);
  if (count > static_cast<unsigned long>(budget))
    throw BudgetError("generate(" + gen.name() + ", n=" + std::to_string(n) + ") has " +
                      count.get_str() + " elements, over the budget of " +
                      std::to_string(budget));
}

FiniteSet generate(const FolnerGen& gen, long n, std::size_t budget) {
  check_budget(gen, n, budget);
  std::vector<GroupElement> out;
  switch (gen.kind) {
    case FolnerGen::Kind::Box: {
      long lo = gen.centered ? -gen.scale * n : 0;
      long hi = gen.centered ? gen.scale * n : gen.scale * n - 1;
      std::vector<long> idx(gen.d, lo);
      for (;;) {
        std::vector<Int> coords(idx.begin(), idx.end());
        out.push_back(make_int_vec(std::move(coords)));
        int k = gen.d - 1;
        while (k >= 0 && idx[k] == hi) idx[k--] = lo;
        if (k < 0) break;
        ++idx[k];
      }
      break;
    }
    case FolnerGen::Kind::HeisBox: {
      for (long a = -n; a <= n; ++a)
        for (long b = -n; b <= n; ++b)
          for (long c = -n * n; c <= n * n; ++c) out.push_back(make_heis(a, b, c));
      break;
    }
    case FolnerGen::Kind::SymBall: {
      std::vector<long> images(n + 1);
      for (long i = 0; i <= n; ++i) images[i] = i;
      do {
        std::vector<std::pair<long, long>> map;
        for (long i = 0; i <= n; ++i) map.emplace_back(i, images[i]);
        out.push_back(make_fin_perm(std::move(map)));
      } while (std::next_permutation(images.begin(), images.end()));
      break;
    }
    case FolnerGen::Kind::LampLine: {
      Int den = pow_int(Int(gen.p), static_cast<unsigned long>(n));
      Int top = den * den;
      for (Int j = 0; j < top; ++j) {
        Rat b(j, den);
        b.canonicalize();
        out.push_back(make_lamp_bs(gen.p, b, Int(0)));
      }
      break;
    }
    case FolnerGen::Kind::AffTransBox: {
      for (long j = 0; j < n; ++j) out.push_back(make_aff_q(Rat(j), Rat(1)));
      break;
    }
    case FolnerGen::Kind::AffScaleGeom: {
      Int pw = 1;
      for (long j = 0; j < n; ++j) {
        out.push_back(make_aff_q(Rat(0), Rat(pw)));
        pw *= gen.p;
      }
      break;
    }
    case FolnerGen::Kind::CycInterval: {
      for (long j = 0; j < std::min(n, gen.m); ++j) out.push_back(make_cyc(gen.m, j));
      break;
    }
    case FolnerGen::Kind::SemidirectRect: {
      FiniteSet b = generate(*gen.bgen, n, budget);
      FiniteSet a = generate(*gen.agen, n, budget);
      out.reserve(b.size() * a.size());
      for (const auto& x : b)
        for (const auto& y : a) out.push_back(multiply(x, y));
      break;
    }
    case FolnerGen::Kind::TranslatedSeq: {
      FiniteSet b = generate(*gen.base, n, budget);
      const auto& tr = gen.translations;
      const GroupElement& s =
          tr[std::min<std::size_t>(static_cast<std::size_t>(n) - 1, tr.size() - 1)];
      return b.translated_right(s);
    }
  }
  return FiniteSet(std::move(out));
}

/// |A delta B| for sorted unique vectors.
template <typename T>
static std::size_t symdiff_size(const std::vector<T>& a, const std::vector<T>& b) {
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    int c = cmp(a[i], b[j]);
    if (c < 0) ++count, ++i;
    else if (c > 0) ++count, ++j;
    else ++i, ++j;
  }
  return count + (a.size() - i) + (b.size() - j);
}

Rat left_defect(const FiniteSet& f, const GroupElement& t) {
  if (f.empty()) throw UsageError("left_defect of an empty set");
  FiniteSet tf = f.translated_left(t);
  Rat r(static_cast<unsigned long>(symdiff_size(f.elements(), tf.elements())),
        static_cast<unsigned long>(f.size()));
  r.canonicalize();
  return r;
}

Rat right_defect(const FiniteSet& f, const GroupElement& t) {
  if (f.empty()) throw UsageError("right_defect of an empty set");
  FiniteSet ft = f.translated_right(t);
  Rat r(static_cast<unsigned long>(symdiff_size(f.elements(), ft.elements())),
        static_cast<unsigned long>(f.size()));
  r.canonicalize();
  return r;
}

Rat triple_right_defect(const std::vector<CosetKey>& f, const GroupElement& s,
                        const Subgroup& h) {
  if (f.empty()) throw UsageError("triple_right_defect of an empty set");
  std::vector<CosetKey> orig = f, moved;
  moved.reserve(f.size());
  for (const auto& k : f) moved.push_back(act_right_cH(s, k, h));
  std::sort(orig.begin(), orig.end());
  std::sort(moved.begin(), moved.end());
  if (std::adjacent_find(orig.begin(), orig.end()) != orig.end())
    throw UsageError("triple_right_defect: duplicate keys");
  Rat r(static_cast<unsigned long>(symdiff_size(orig, moved)),
        static_cast<unsigned long>(f.size()));
  r.canonicalize();
  return r;
}

std::vector<CosetKey> quotient_box_keys(const Subgroup& h, const Group& g, long n) {
  std::vector<CosetKey> keys;
  if (h.tag == SubgroupTag::HeisCenter) {
    for (long a = -n; a <= n; ++a)
      for (long b = -n; b <= n; ++b) keys.push_back(CosetKey{std::vector<Int>{Int(a), Int(b)}});
    return keys;
  }
  if (h.tag == SubgroupTag::ZdSlice) {
    for (long a = -n; a <= n; ++a) keys.push_back(CosetKey{std::vector<Int>{Int(a)}});
    return keys;
  }
  if (h.tag == SubgroupTag::FiniteSubgroup && g.tag == GroupTag::Cyc) {
    std::vector<CosetKey> out;
    for (long j = 0; j < std::min(n, g.m); ++j) {
      CosetKey k = canonicalize(make_cyc(g.m, j), h);
      if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
    return out;
  }
  throw ConfigError("quotient boxes unsupported for " + h.name());
}

FiniteSet quotient_box_lifts(const Subgroup& h, const Group& g, long n) {
  std::vector<GroupElement> out;
  for (const auto& k : quotient_box_keys(h, g, n)) out.push_back(lift(k, h, g));
  return FiniteSet(std::move(out));
}

AdversarialResult adversarial_translate(const FiniteSet& f, const GroupElement& t,
                                        long search_budget) {
  if (f.empty()) throw UsageError("adversarial_translate on an empty set");
  AdversarialResult res;

  auto try_candidate = [&](const GroupElement& s) -> bool {
    ++res.candidates_tried;
    Rat r = right_defect(f, conjugate(s, t));
    if (r == 2) {
      res.found = true;
      res.s = s;
      res.ratio = r;
      return true;
    }
    res.ratio = r;
    return false;
  };

  switch (t.tag) {
    case GroupTag::Heis: {
      if (t.vec[0] == 0 && t.vec[1] == 0)
        throw PreconditionError("adversarial_translate: central element of Heis has a "
                                "finite conjugation class");
      // Conjugating (a,b,c) by (0,y,0) gives (a,b,c-ay); by (x,0,0) gives
      // (a,b,c+xb) when a=0. Either way the c-coordinate escapes any box.
      bool use_y = t.vec[0] != 0;
      Int step = 1;
      for (long i = 0; i < search_budget; ++i) {
        GroupElement s = use_y ? make_heis(0, step, 0) : make_heis(step, 0, 0);
        if (try_candidate(s)) return res;
        step *= 2;
      }
      return res;
    }
    case GroupTag::LampBS: {
      if (t.ia != 0 || t.rb == 0)
        throw PreconditionError("adversarial_translate: LampBS translate must be (b,0), b != 0");
      // Conjugating (b,0) by (0,k) gives (p^k b, 0); the shift outgrows F.
      Int k = 1;
      for (long i = 0; i < search_budget; ++i) {
        GroupElement s = make_lamp_bs(t.p, Rat(0), k);
        if (try_candidate(s)) return res;
        k *= 2;
      }
      return res;
    }
    case GroupTag::FinPerm: {
      if (t.perm.map.empty())
        throw PreconditionError("adversarial_translate: identity permutation");
      // Relabel supp(t) onto fresh points beyond everything F touches; the
      // conjugated translate then moves points no member of F^{-1}F does.
      long top = 0;
      for (const auto& g : f)
        for (long x : g.perm.support()) top = std::max(top, x + 1);
      for (long x : t.perm.support()) top = std::max(top, x + 1);
      std::vector<long> supp = t.perm.support();
      for (long i = 0; i < search_budget; ++i) {
        std::vector<std::pair<long, long>> swaps;
        for (std::size_t j = 0; j < supp.size(); ++j) {
          long fresh = top + static_cast<long>(i * supp.size() + j);
          swaps.emplace_back(supp[j], fresh);
          swaps.emplace_back(fresh, supp[j]);
        }
        if (try_candidate(make_fin_perm(std::move(swaps)))) return res;
      }
      return res;
    }
    default:
      throw PreconditionError(
          "adversarial_translate supports Heis, LampBS and Sym_0(N) translates only");
  }
}

}  // namespace cosetlab

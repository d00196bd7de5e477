#include "cosetlab/thinness.hpp"

#include <algorithm>
#include <map>

namespace cosetlab {

Rat thinness_ratio(const DoubleCosetQuery& q) {
  if (q.f.empty()) throw UsageError("thinness_ratio of an empty set");
  if (q.x.empty() || q.y.empty()) throw UsageError("thinness_ratio wants nonempty windows");
  Group g = group_of(q.f.elements().front());
  std::size_t best = 0;
  for (const auto& ykey : q.y) {
    GroupElement ylift = lift(ykey, q.l, g);
    // f in x L y^{-1}  <=>  f*ylift lands in the coset keyed by x.
    std::map<CosetKey, std::size_t> counts;
    for (const auto& f : q.f) ++counts[canonicalize(multiply(f, ylift), q.l)];
    for (const auto& xkey : q.x) {
      auto it = counts.find(xkey);
      if (it != counts.end()) best = std::max(best, it->second);
    }
  }
  Rat r(static_cast<unsigned long>(best), static_cast<unsigned long>(q.f.size()));
  r.canonicalize();
  return r;
}

/// Bound for one translate. With no window the coset counts of F u are used
/// directly, which covers every coset meeting F u and makes the maximum equal
/// to the true supremum; a partial window leaves the bound uncertified.
static Rat covering_ratio(const FiniteSet& f, const Subgroup& l, const GroupElement& u,
                          const std::vector<CosetKey>* x_window, bool* certified) {
  std::map<CosetKey, std::size_t> counts;
  for (const auto& s : f) ++counts[canonicalize(multiply(s, u), l)];
  std::size_t best = 0;
  if (x_window) {
    for (const auto& [k, c] : counts)
      if (std::find(x_window->begin(), x_window->end(), k) == x_window->end()) {
        if (certified) *certified = false;
        break;
      }
    for (const auto& xk : *x_window) {
      auto it = counts.find(xk);
      if (it != counts.end()) best = std::max(best, it->second);
    }
  } else {
    for (const auto& [k, c] : counts) best = std::max(best, c);
  }
  Rat r(static_cast<unsigned long>(best), static_cast<unsigned long>(f.size()));
  r.canonicalize();
  return r;
}

CorrelationReport correlation_bound_check(const FiniteSet& f, const PosDefFn& phi,
                                          const Subgroup& l, const GroupElement& u,
                                          const std::vector<CosetKey>* x_window) {
  if (f.empty()) throw UsageError("correlation of an empty set");
  CorrelationReport rpt;

  RatCplx sum_q;
  std::complex<double> sum_f{0, 0};
  bool exact = true;
  GroupElement uinv = inverse(u);
  std::vector<GroupElement> moved;  // u^{-1} s^{-1} per s, reused over t
  moved.reserve(f.size());
  for (const auto& s : f) moved.push_back(multiply(uinv, inverse(s)));
  for (const auto& left : moved)
    for (const auto& t : f) {
      GroupElement arg = multiply(multiply(left, t), u);
      if (!member(arg, l)) continue;  // phi vanishes off L
      PhiValue v = evaluate(phi, arg);
      if (v.exact) {
        if (v.q.abs_sq() > 1)
          throw PreconditionError("correlation seed exceeds one in absolute value");
      } else if (std::abs(v.f) > 1 + 1e-12) {
        throw PreconditionError("correlation seed exceeds one in absolute value");
      }
      exact = exact && v.exact;
      if (v.exact) sum_q += v.q;
      sum_f += v.f;
    }

  Rat size_sq = Rat(static_cast<unsigned long>(f.size())) *
                Rat(static_cast<unsigned long>(f.size()));
  rpt.exact = exact;
  rpt.corr_f = std::abs(sum_f) / size_sq.get_d();
  rpt.bound = covering_ratio(f, l, u, x_window, &rpt.certified);
  if (exact) {
    rpt.corr_sq = sum_q.abs_sq() / (size_sq * size_sq);
    rpt.holds = rpt.corr_sq <= rpt.bound * rpt.bound;
  } else {
    rpt.holds = rpt.corr_f <= rpt.bound.get_d() + 1e-9;
  }
  return rpt;
}

std::vector<FirmnessPoint> induced_firmness_curve(const FolnerGen& fgen, const Subgroup& l,
                                                  const std::vector<GroupElement>& translates,
                                                  long nmax, std::size_t budget) {
  Group g = fgen.group();
  std::vector<GroupElement> all = translates;
  GroupElement e = identity(g);
  if (std::find(all.begin(), all.end(), e) == all.end()) all.insert(all.begin(), e);

  std::vector<FirmnessPoint> out;
  for (long n = 1; n <= nmax; ++n) {
    FiniteSet f = generate(fgen, n, budget);
    FirmnessPoint pt;
    pt.n = n;
    pt.size = f.size();
    pt.worst_corr = Rat(0);
    pt.bound = Rat(0);
    for (const auto& u : all) {
      // For the regular seed the correlation is exactly the averaged norm.
      Rat corr = avg_norm_sq_delta_translated(f, u, l);
      Rat bnd = covering_ratio(f, l, u, nullptr, nullptr);
      pt.worst_corr = std::max(pt.worst_corr, corr);
      pt.bound = std::max(pt.bound, bnd);
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace cosetlab

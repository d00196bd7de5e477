#include "cosetlab/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cosetlab {

FcReport fc_probe(const GroupElement& g, const std::vector<GroupElement>& generators,
                  std::size_t budget) {
  FcReport rpt;
  // Analytic shortcuts first.
  if (g.tag == GroupTag::Heis) {
    bool central = g.vec[0] == 0 && g.vec[1] == 0;
    rpt.verdict = central ? FcVerdict::FiniteCertified : FcVerdict::InfiniteCertified;
    rpt.closed = central;
    rpt.orbit_sample = {g};
    if (!central) {
      // one witness conjugate (a,b,c-a) or (a,b,c+b)
      GroupElement t = g.vec[0] != 0 ? make_heis(0, 1, 0) : make_heis(1, 0, 0);
      rpt.orbit_sample.push_back(conjugate(t, g));
    }
    return rpt;
  }
  if (g.tag == GroupTag::IntVec || g.tag == GroupTag::Cyc) {
    rpt.verdict = FcVerdict::FiniteCertified;
    rpt.closed = true;
    rpt.orbit_sample = {g};
    return rpt;
  }

  std::set<GroupElement> orbit{g};
  std::vector<GroupElement> frontier{g};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& s : generators) {
        for (const GroupElement& c : {conjugate(s, x), conjugate(inverse(s), x)}) {
          if (orbit.size() >= budget) {
            rpt.verdict = FcVerdict::Inconclusive;
            rpt.orbit_sample.assign(orbit.begin(), orbit.end());
            return rpt;
          }
          if (orbit.insert(c).second) next.push_back(c);
        }
      }
    frontier = std::move(next);
  }
  rpt.verdict = FcVerdict::FiniteCertified;
  rpt.closed = true;
  rpt.orbit_sample.assign(orbit.begin(), orbit.end());
  return rpt;
}

static Rat firm_bound_value(FirmBound b, long n) {
  switch (b) {
    case FirmBound::HeisCenterBox: {
      Rat r(1, (2 * n + 1) * (2 * n + 1));
      r.canonicalize();
      return r;
    }
    case FirmBound::ZdSliceBox: {
      Rat r(1, n);
      r.canonicalize();
      return r;
    }
    case FirmBound::FullTrivial: return Rat(1);
    case FirmBound::None: return Rat(2);
  }
  return Rat(2);
}

std::vector<FirmPoint> firm_demo(const FolnerGen& fgen, const Subgroup& h,
                                 const std::vector<GroupElement>& translates, long nmax,
                                 FirmBound bound, std::size_t budget) {
  if (translates.empty()) throw UsageError("firm_demo wants translates");
  std::vector<FirmPoint> out;
  for (long n = 1; n <= nmax; ++n) {
    FiniteSet f = generate(fgen, n, budget);
    FirmPoint pt;
    pt.n = n;
    pt.size = f.size();
    bool first = true;
    for (const auto& s : translates) {
      Rat v = avg_norm_sq_delta_translated(f, s, h);
      if (first || v > pt.max_norm_sq) pt.max_norm_sq = v;
      if (first || v < pt.min_norm_sq) pt.min_norm_sq = v;
      first = false;
    }
    if (bound != FirmBound::None && pt.max_norm_sq > firm_bound_value(bound, n))
      throw InvariantFailure("firm_demo: norm above the analytic bound at n=" +
                             std::to_string(n));
    if (n > 2 && pt.max_norm_sq > out.back().max_norm_sq)
      throw InvariantFailure("firm_demo: norm curve increased at n=" + std::to_string(n));
    out.push_back(std::move(pt));
  }
  return out;
}

TransferResult transfer_search(const std::map<GroupElement, Rat>& phi, const FolnerGen& fgen,
                               const FiniteSet& km, long m, long scan_nmin, long scan_nmax,
                               std::size_t budget) {
  if (km.empty()) throw UsageError("transfer_search wants a nonempty K_m");
  if (m < 1) throw UsageError("transfer_search wants m >= 1");
  if (scan_nmin < 1 || scan_nmin > scan_nmax) throw UsageError("bad transfer scan range");

  auto lookup = [&](const GroupElement& g, Rat& out) {
    auto it = phi.find(g);
    if (it == phi.end()) return false;
    out = it->second;
    return true;
  };

  TransferResult res;
  std::vector<FiniteSet> scanned;
  std::vector<long> scanned_n;
  // Pass 1: the best Folner average within the table's window.
  for (long n = scan_nmin; n <= scan_nmax; ++n) {
    FiniteSet f = generate(fgen, n, budget);
    Rat sum(0), v;
    bool ok = true;
    for (const auto& t : f) {
      if (!lookup(t, v)) {
        ok = false;
        break;
      }
      sum += v;
    }
    if (!ok) break;
    Rat avg = sum / Rat(static_cast<unsigned long>(f.size()));
    if (scanned.empty() || avg > res.beta_hat) res.beta_hat = avg;
    scanned.push_back(std::move(f));
    scanned_n.push_back(n);
  }
  res.scanned = static_cast<long>(scanned.size());
  if (scanned.empty()) return res;  // inconclusive: table too small

  Rat target = res.beta_hat - Rat(1, m);
  target.canonicalize();

  // Pass 2: the smallest n whose best K-shifted average reaches the target.
  for (std::size_t i = 0; i < scanned.size(); ++i) {
    const FiniteSet& f = scanned[i];
    bool ok = true;
    Rat v;
    Rat total(0);
    const GroupElement* best = nullptr;
    Rat best_avg(0);
    for (const auto& t : f) {
      Rat inner_sum(0);
      for (const auto& s : km) {
        if (!lookup(multiply(s, t), v)) {
          ok = false;
          break;
        }
        inner_sum += v;
      }
      if (!ok) break;
      Rat inner_avg = inner_sum / Rat(static_cast<unsigned long>(km.size()));
      total += inner_avg;
      if (!best || inner_avg > best_avg) {
        best = &t;
        best_avg = inner_avg;
      }
    }
    if (!ok || !best) continue;
    Rat double_avg = total / Rat(static_cast<unsigned long>(f.size()));
    // Interchange check: summing the other way round gives the same value.
    Rat swapped(0);
    bool swap_ok = true;
    for (const auto& s : km) {
      Rat shifted(0);
      for (const auto& t : f) {
        if (!lookup(multiply(s, t), v)) {
          swap_ok = false;
          break;
        }
        shifted += v;
      }
      if (!swap_ok) break;
      swapped += shifted / Rat(static_cast<unsigned long>(f.size()));
    }
    if (swap_ok) {
      swapped /= Rat(static_cast<unsigned long>(km.size()));
      if (swapped != double_avg)
        throw InvariantFailure("transfer_search: averaging interchange failed");
    }
    if (best_avg < double_avg)
      throw InvariantFailure("transfer_search: maximum below the mean");
    if (best_avg >= target) {
      res.conclusive = true;
      res.chosen_n = scanned_n[i];
      res.t_m = *best;
      res.achieved = best_avg;
      res.double_avg = double_avg;
      return res;
    }
  }
  return res;  // inconclusive: window exhausted before the bound was met
}

OrthonormalFamily scaled_basis_family(std::size_t m, std::size_t count) {
  if (count > m) throw UsageError("at most m orthonormal functions on m points");
  OrthonormalFamily fam;
  fam.points = m;
  double scale = std::sqrt(static_cast<double>(m));
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> f(m, 0.0);
    f[k] = scale;
    fam.funcs.push_back(std::move(f));
  }
  return fam;
}

OrthonormalFamily random_orthonormal_family(std::size_t m, std::size_t count,
                                            std::uint64_t seed) {
  if (count > m) throw UsageError("at most m orthonormal functions on m points");
  Rng rng(seed);
  OrthonormalFamily fam;
  fam.points = m;
  fam.funcs.reserve(count);
  double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> f(m);
    for (auto& x : f) x = rng.normal();
    // center: stay inside the mean-zero subspace
    double mean = 0;
    for (double x : f) mean += x;
    mean *= inv_m;
    for (auto& x : f) x -= mean;
    // two rounds of modified Gram-Schmidt for orthogonality at double precision
    for (int round = 0; round < 2; ++round)
      for (const auto& g : fam.funcs) {
        double c = 0;
        for (std::size_t i = 0; i < m; ++i) c += f[i] * g[i];
        c *= inv_m;
        for (std::size_t i = 0; i < m; ++i) f[i] -= c * g[i];
      }
    double nrm = 0;
    for (double x : f) nrm += x * x;
    nrm = std::sqrt(nrm * inv_m);
    if (nrm < 1e-8) throw InvariantFailure("degenerate random family");
    for (auto& x : f) x /= nrm;
    fam.funcs.push_back(std::move(f));
  }
  // verify pairwise orthonormality
  for (std::size_t a = 0; a < fam.funcs.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      double c = 0;
      for (std::size_t i = 0; i < m; ++i) c += fam.funcs[a][i] * fam.funcs[b][i];
      c *= inv_m;
      if (std::abs(c - (a == b ? 1.0 : 0.0)) > 1e-10)
        throw InvariantFailure("random family failed the orthonormality tolerance");
    }
  return fam;
}

static long isqrt_long(long m) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(m)));
  while (r * r > m) --r;
  while ((r + 1) * (r + 1) <= m) ++r;
  return r;
}

RajchmanReport rajchman_demo(const OrthonormalFamily& fam, long nmax) {
  if (nmax < 1 || static_cast<std::size_t>(nmax) > fam.funcs.size())
    throw UsageError("rajchman_demo wants 1 <= nmax <= family size");
  std::size_t m_pts = fam.points;
  RajchmanReport rpt;
  for (const auto& f : fam.funcs)
    for (double x : f) rpt.max_inf_norm = std::max(rpt.max_inf_norm, std::abs(x));

  std::vector<double> prefix(m_pts, 0.0);
  std::vector<std::vector<double>> square_snapshots;  // S_{1}, S_{4}, S_{9}, ...
  square_snapshots.push_back(std::vector<double>(m_pts, 0.0));  // S_0
  rpt.worst_bridge_slack = std::numeric_limits<double>::infinity();

  for (long n = 1; n <= nmax; ++n) {
    const auto& f = fam.funcs[static_cast<std::size_t>(n - 1)];
    for (std::size_t i = 0; i < m_pts; ++i) prefix[i] += f[i];
    long r = isqrt_long(n);
    bool is_square = r * r == n;
    if (is_square) square_snapshots.push_back(prefix);

    double sup = 0;
    for (double x : prefix) sup = std::max(sup, std::abs(x));
    rpt.curve.push_back({n, is_square, sup / static_cast<double>(n)});

    // Bridge m = n against the last full square: the averages differ by at
    // most ((m - n(m)^2)/m) * max inf-norm, and m - n(m)^2 <= 1 + 2 sqrt(m).
    const auto& snap = square_snapshots[static_cast<std::size_t>(r)];
    double observed = 0;
    for (std::size_t i = 0; i < m_pts; ++i)
      observed = std::max(observed, std::abs(prefix[i] - snap[i]));
    observed /= static_cast<double>(n);
    long gap = n - r * r;
    if (gap > 1 + 2 * r) {
      rpt.bridging_ok = false;  // cannot happen; kept as an exact guard
    }
    double bound = (static_cast<double>(1 + 2 * r) / static_cast<double>(n)) *
                   rpt.max_inf_norm;
    if (gap > 0 && observed > (static_cast<double>(gap) / static_cast<double>(n)) *
                                      rpt.max_inf_norm + 1e-9)
      rpt.bridging_ok = false;
    rpt.worst_bridge_slack = std::min(rpt.worst_bridge_slack, bound - observed);
    if (observed > bound) rpt.bridging_ok = false;
  }
  return rpt;
}

RigidReport rigid_orbit_check(const std::vector<std::pair<GroupElement, RatCplx>>& table) {
  RigidReport rpt;
  bool have_zero = false, have_nonzero = false, have_c = false;
  RatCplx zero_value, nonzero_value;
  GroupElement zero_witness, nonzero_witness;
  for (const auto& [g, v] : table) {
    if (g.tag != GroupTag::AffQ) throw ConfigError("rigid table wants affine elements");
    if (g.rb == 0) {
      if (!have_zero) {
        have_zero = true;
        zero_value = v;
        zero_witness = g;
      } else if (v != zero_value) {
        rpt.verdict = RigidReport::Verdict::Counterexample;
        rpt.detail = "phi(" + encode(zero_witness) + ") = " + cplx_str(zero_value) +
                     " but phi(" + encode(g) + ") = " + cplx_str(v);
        return rpt;
      }
    } else {
      if (!have_nonzero) {
        have_nonzero = true;
        nonzero_value = v;
        nonzero_witness = g;
      } else if (v != nonzero_value) {
        rpt.verdict = RigidReport::Verdict::Counterexample;
        rpt.detail = "phi(" + encode(nonzero_witness) + ") = " + cplx_str(nonzero_value) +
                     " but phi(" + encode(g) + ") = " + cplx_str(v);
        return rpt;
      }
      if (g.rb == 1 && g.ra == 1) have_c = true;
    }
  }
  if (!have_zero) throw ConfigError("rigid table must contain the zero orbit");
  if (zero_value != RatCplx(Rat(1))) {
    rpt.verdict = RigidReport::Verdict::Counterexample;
    rpt.detail = "phi must be one on the scale subgroup, got " + cplx_str(zero_value);
    return rpt;
  }
  if (!have_c || !have_nonzero) throw ConfigError("rigid table must contain (1,1)");
  rpt.off_orbit_value = nonzero_value;
  rpt.verdict = nonzero_value.is_zero() ? RigidReport::Verdict::Rigid
                                        : RigidReport::Verdict::ConstantNotRigid;
  return rpt;
}

}  // namespace cosetlab

#include "cosetlab/gram.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <set>

namespace cosetlab {

GramWindow build_gram(const PosDefFn& phi, const std::vector<CosetKey>& window,
                      const Subgroup& h, const Group& g) {
  if (window.empty()) throw UsageError("empty Gram window");
  {
    std::vector<CosetKey> sorted = window;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw UsageError("Gram window has repeated keys");
  }
  GramWindow w;
  w.group = g;
  w.h = h;
  w.keys = window;
  std::size_t k = window.size();
  std::vector<GroupElement> lifts;
  lifts.reserve(k);
  for (const auto& key : window) lifts.push_back(lift(key, h, g));

  w.exact = true;
  std::vector<std::vector<PhiValue>> vals(k, std::vector<PhiValue>(k));
  for (std::size_t i = 0; i < k; ++i) {
    GroupElement xi_inv = inverse(lifts[i]);
    for (std::size_t j = 0; j < k; ++j) {
      vals[i][j] = evaluate(phi, multiply(xi_inv, lifts[j]));
      w.exact = w.exact && vals[i][j].exact;
    }
  }

  w.mf.assign(k, std::vector<std::complex<double>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) w.mf[i][j] = vals[i][j].f;

  if (w.exact) {
    w.mq.assign(k, std::vector<RatCplx>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) w.mq[i][j] = vals[i][j].q;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (w.mq[i][j] != w.mq[j][i].conj())
          throw InvariantFailure("Gram window is not Hermitian at (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
  } else {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (std::abs(w.mf[i][j] - std::conj(w.mf[j][i])) > 1e-12)
          throw InvariantFailure("Gram window is not Hermitian (float mode)");
  }
  return w;
}

std::vector<CosetKey> orbit_window(const std::vector<GroupElement>& generators,
                                   const Subgroup& h, const Group& g, int radius,
                                   std::size_t budget) {
  std::vector<GroupElement> gens = generators;
  for (const auto& s : generators) gens.push_back(inverse(s));
  std::set<CosetKey> seen;
  std::vector<CosetKey> frontier{identity_key(h, g)};
  seen.insert(frontier.front());
  for (int r = 0; r < radius; ++r) {
    std::vector<CosetKey> next;
    for (const auto& k : frontier)
      for (const auto& s : gens) {
        CosetKey nk = act_left(s, k, h);
        if (seen.insert(nk).second) next.push_back(nk);
        if (seen.size() > budget) throw BudgetError("orbit window over budget");
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

RatCplx gram_inner(const GramWindow& w, const std::vector<RatCplx>& x,
                   const std::vector<RatCplx>& y) {
  if (!w.exact) throw UsageError("gram_inner wants an exact window");
  std::size_t k = w.keys.size();
  if (x.size() != k || y.size() != k) throw UsageError("gram_inner: size mismatch");
  RatCplx acc;
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < k; ++j) acc += x[i] * y[j].conj() * w.mq[i][j];
  }
  return acc;
}

static Eigen::MatrixXcd to_eigen(const DMat& m) {
  Eigen::MatrixXcd e(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) e(i, j) = m[i][j];
  return e;
}

PsdVerdict psd_check(const GramWindow& w) {
  PsdVerdict v;
  std::size_t k = w.keys.size();
  if (w.exact) {
    v.exact_mode = true;
    CMat m = w.mq;
    for (std::size_t i = 0; i < k; ++i)
      if (m[i][i].im != 0) throw InvariantFailure("non-real Gram diagonal");
    for (std::size_t i = 0; i < k; ++i) {
      Rat piv = m[i][i].re;
      v.pivots.push_back(piv);
      if (piv < 0) {
        v.psd = false;
        v.witness_index = static_cast<long>(i);
        v.witness = piv;
        return v;
      }
      if (piv == 0) {
        // PSD forces the whole residual row to vanish; otherwise the 2x2
        // minor [[0, z],[conj z, d]] has negative determinant -|z|^2.
        for (std::size_t j = i + 1; j < k; ++j)
          if (!m[i][j].is_zero()) {
            v.psd = false;
            v.witness_index = static_cast<long>(i);
            v.witness = -m[i][j].abs_sq();
            return v;
          }
        continue;
      }
      for (std::size_t r = i + 1; r < k; ++r) {
        if (m[r][i].is_zero()) continue;
        RatCplx factor = m[r][i] / piv;
        for (std::size_t c = i + 1; c < k; ++c) m[r][c] -= factor * m[i][c];
        m[r][i] = RatCplx();
      }
      for (std::size_t c = i + 1; c < k; ++c) m[i][c] = RatCplx();
    }
    v.psd = true;
    return v;
  }
  v.exact_mode = false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(w.mf),
                                                     Eigen::EigenvaluesOnly);
  double trace = 0;
  for (std::size_t i = 0; i < k; ++i) trace += w.mf[i][i].real();
  v.min_eigenvalue = es.eigenvalues().minCoeff();
  v.psd = v.min_eigenvalue >= -1e-9 * std::max(1.0, trace);
  return v;
}

GnsBasis gns_quotient(const GramWindow& w) {
  PsdVerdict psd = psd_check(w);
  if (!psd.psd) throw PreconditionError("gns_quotient wants a PSD Gram window");
  GnsBasis out;
  std::size_t k = w.keys.size();

  if (w.exact) {
    out.exact_mode = true;
    // Gram-Schmidt without normalization: columns with positive squared norm
    // survive the quotient, null columns are dropped.
    CMat basis;   // columns as coefficient vectors
    std::vector<Rat> norms;
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<RatCplx> col(k);
      col[j] = RatCplx(Rat(1));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        RatCplx coef = gram_inner(w, col, basis[i]) / norms[i];
        if (coef.is_zero()) continue;
        for (std::size_t r = 0; r < k; ++r) col[r] -= coef * basis[i][r];
      }
      RatCplx nsq = gram_inner(w, col, col);
      if (nsq.im != 0 || nsq.re < 0)
        throw InvariantFailure("negative squared norm in a PSD window");
      if (nsq.re == 0) continue;
      basis.push_back(std::move(col));
      norms.push_back(nsq.re);
    }
    out.rank = static_cast<long>(basis.size());
    out.d = norms;
    out.b.assign(k, std::vector<RatCplx>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t r = 0; r < k; ++r) out.b[r][j] = basis[j][r];
    out.bf.assign(k, std::vector<std::complex<double>>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      double inv = 1.0 / std::sqrt(norms[j].get_d());
      for (std::size_t r = 0; r < k; ++r) out.bf[r][j] = out.b[r][j].to_double() * inv;
    }
    return out;
  }

  out.exact_mode = false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(w.mf));
  double trace = 0;
  for (std::size_t i = 0; i < k; ++i) trace += w.mf[i][i].real();
  double tol = 1e-9 * std::max(1.0, trace);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < k; ++i)
    if (es.eigenvalues()(i) > tol) keep.push_back(i);
  out.rank = static_cast<long>(keep.size());
  out.bf.assign(k, std::vector<std::complex<double>>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    double inv = 1.0 / std::sqrt(es.eigenvalues()(keep[j]));
    for (std::size_t r = 0; r < k; ++r) out.bf[r][j] = es.eigenvectors()(r, keep[j]) * inv;
  }
  return out;
}

CompressedRep compressed_rep(const PosDefFn& phi, const GramWindow& w, const GroupElement& g) {
  GnsBasis basis = gns_quotient(w);
  std::size_t k = w.keys.size();
  std::size_t r = static_cast<std::size_t>(basis.rank);
  std::vector<GroupElement> lifts;
  lifts.reserve(k);
  for (const auto& key : w.keys) lifts.push_back(lift(key, w.h, w.group));
  GroupElement ginv = inverse(g);

  // G_raw[x][y] = <pi(g) delta_x, delta_y> = phi(x^{-1} g^{-1} y).
  std::vector<std::vector<PhiValue>> graw(k, std::vector<PhiValue>(k));
  bool exact = w.exact;
  for (std::size_t x = 0; x < k; ++x) {
    GroupElement left = multiply(inverse(lifts[x]), ginv);
    for (std::size_t y = 0; y < k; ++y) {
      graw[x][y] = evaluate(phi, multiply(left, lifts[y]));
      exact = exact && graw[x][y].exact;
    }
  }

  CompressedRep out;
  out.exact_mode = exact && basis.exact_mode;

  if (out.exact_mode) {
    out.d = basis.d;
    out.c.assign(r, std::vector<RatCplx>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        RatCplx acc;
        for (std::size_t x = 0; x < k; ++x) {
          if (basis.b[x][j].is_zero()) continue;
          for (std::size_t y = 0; y < k; ++y)
            acc += basis.b[x][j] * basis.b[y][i].conj() * graw[x][y].q;
        }
        out.c[i][j] = acc;
      }
    out.a.assign(r, std::vector<std::complex<double>>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        out.a[i][j] =
            out.c[i][j].to_double() / std::sqrt(out.d[i].get_d() * out.d[j].get_d());
    // A^H A = I  <=>  sum_k conj(C[k][i]) C[k][j] / d_k == delta_ij d_i.
    out.unitary_exact = true;
    for (std::size_t i = 0; i < r && out.unitary_exact; ++i)
      for (std::size_t j = 0; j < r && out.unitary_exact; ++j) {
        RatCplx acc;
        for (std::size_t t = 0; t < r; ++t)
          acc += out.c[t][i].conj() * out.c[t][j] / out.d[t];
        RatCplx expect = (i == j) ? RatCplx(out.d[i]) : RatCplx();
        if (acc != expect) out.unitary_exact = false;
      }
  } else {
    out.a.assign(r, std::vector<std::complex<double>>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        std::complex<double> acc{0, 0};
        for (std::size_t x = 0; x < k; ++x)
          for (std::size_t y = 0; y < k; ++y)
            acc += basis.bf[x][j] * std::conj(basis.bf[y][i]) * graw[x][y].f;
        out.a[i][j] = acc;
      }
  }

  // Leakage: window keys whose g-image leaves the window lose the part of
  // pi(g) delta_x orthogonal to the window span.
  out.leakage_exact = out.exact_mode;
  out.leakage_q = Rat(0);
  out.leakage_f = 0;
  for (std::size_t x = 0; x < k; ++x) {
    CosetKey image = act_left(g, w.keys[x], w.h);
    if (std::find(w.keys.begin(), w.keys.end(), image) != w.keys.end()) continue;
    GroupElement u = multiply(g, lifts[x]);
    GroupElement uinv = inverse(u);
    // <pi(g) delta_x, delta_y> = phi(u^{-1} y)
    std::vector<PhiValue> row(k);
    bool row_exact = true;
    for (std::size_t y = 0; y < k; ++y) {
      row[y] = evaluate(phi, multiply(uinv, lifts[y]));
      row_exact = row_exact && row[y].exact;
    }
    PhiValue self = evaluate(phi, identity(w.group));
    if (out.leakage_exact && row_exact && basis.exact_mode) {
      Rat proj(0);
      for (std::size_t i = 0; i < r; ++i) {
        RatCplx coef;
        for (std::size_t y = 0; y < k; ++y)
          if (!basis.b[y][i].is_zero()) coef += row[y].q * basis.b[y][i].conj();
        proj += coef.abs_sq() / basis.d[i];
      }
      out.leakage_q += self.q.re - proj;
      out.leakage_f = out.leakage_q.get_d();
    } else {
      out.leakage_exact = false;
      double proj = 0;
      for (std::size_t i = 0; i < r; ++i) {
        std::complex<double> coef{0, 0};
        for (std::size_t y = 0; y < k; ++y) coef += row[y].f * std::conj(basis.bf[y][i]);
        proj += std::norm(coef);
      }
      out.leakage_f += self.f.real() - proj;
    }
  }
  return out;
}

}  // namespace cosetlab

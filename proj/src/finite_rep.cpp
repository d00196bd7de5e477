#include "cosetlab/finite_rep.hpp"

#include <algorithm>
#include <set>

namespace cosetlab {

long FiniteRep::index_of(const GroupElement& g) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), g);
  if (it == elements.end() || *it != g)
    throw UsageError("element outside the finite group: " + encode(g));
  return static_cast<long>(it - elements.begin());
}

std::vector<long> FiniteRep::left_perm(const GroupElement& s) const {
  std::vector<long> perm(elements.size());
  for (std::size_t j = 0; j < elements.size(); ++j)
    perm[j] = index_of(multiply(s, elements[j]));
  return perm;
}

RVec FiniteRep::apply(const GroupElement& s, const RVec& v) const {
  std::vector<long> perm = left_perm(s);
  RVec out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[perm[j]] = v[j];
  return out;
}

FiniteRep regular_rep(const std::vector<GroupElement>& group_elements) {
  if (group_elements.empty()) throw UsageError("regular_rep of an empty list");
  std::set<GroupElement> closed(group_elements.begin(), group_elements.end());
  closed.insert(identity(group_of(group_elements.front())));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<GroupElement> cur(closed.begin(), closed.end());
    for (const auto& a : cur) {
      if (closed.insert(inverse(a)).second) grew = true;
      for (const auto& b : cur)
        if (closed.insert(multiply(a, b)).second) grew = true;
    }
    if (closed.size() > 10000) throw BudgetError("finite group too large");
  }
  FiniteRep rep;
  rep.elements.assign(closed.begin(), closed.end());
  return rep;
}

// Row reduction over the rationals; returns the reduced matrix and records
// the pivot column of each nonzero row.
static RMat rref(RMat m, std::vector<std::size_t>& pivot_cols) {
  pivot_cols.clear();
  if (m.empty()) return m;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rat inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  m.resize(r);
  return m;
}

std::size_t rank_of(RMat m) {
  std::vector<std::size_t> piv;
  return rref(std::move(m), piv).size();
}

RMat kernel_basis(const RMat& m) {
  if (m.empty()) return {};
  std::size_t cols = m[0].size();
  std::vector<std::size_t> piv;
  RMat red = rref(m, piv);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : piv) is_pivot[c] = true;
  RMat basis(cols);
  std::size_t nfree = 0;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) ++nfree;
  for (auto& row : basis) row.assign(nfree, Rat(0));
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    basis[c][k] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) basis[piv[r]][k] = -red[r][c];
    ++k;
  }
  return basis;
}

RMat column_space(const RMat& m) {
  if (m.empty() || m[0].empty()) return {};
  std::size_t rows = m.size(), cols = m[0].size();
  RMat t(cols, RVec(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  std::vector<std::size_t> piv;
  RMat red = rref(std::move(t), piv);
  RMat out(rows, RVec(red.size()));
  for (std::size_t j = 0; j < red.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) out[i][j] = red[j][i];
  return out;
}

RMat mat_mul(const RMat& a, const RMat& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b[0].size();
  RMat out(n, RVec(m, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (b[t][j] != 0) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

Rat dot(const RVec& a, const RVec& b) {
  Rat acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

RMat invariant_subspace(const FiniteRep& rep, const std::vector<GroupElement>& S) {
  std::size_t n = rep.dim();
  // Start from the full space and refine: basis = basis * ker((P_s - I) basis).
  RMat basis(n, RVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
  for (const auto& s : S) {
    if (basis.empty() || basis[0].empty()) break;
    std::vector<long> perm = rep.left_perm(s);
    std::size_t b = basis[0].size();
    RMat a(n, RVec(b, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < b; ++j)
        a[perm[i]][j] += basis[i][j], a[i][j] -= basis[i][j];
    RMat k = kernel_basis(a);
    basis = mat_mul(basis, k);
  }
  return basis;
}

static bool contains_all(const std::vector<GroupElement>& big,
                         const std::vector<GroupElement>& small) {
  for (const auto& g : small)
    if (std::find(big.begin(), big.end(), g) == big.end()) return false;
  return true;
}

static void check_h_l_normalizer(const std::vector<GroupElement>& H,
                                 const std::vector<GroupElement>& L) {
  if (!contains_all(L, H)) throw PreconditionError("H is not contained in L");
  for (const auto& s : L)
    for (const auto& h : H)
      if (std::find(H.begin(), H.end(), conjugate(s, h)) == H.end())
        throw PreconditionError("L does not normalize H");
}

RMat coboundary_subspace(const FiniteRep& rep, const std::vector<GroupElement>& H,
                         const std::vector<GroupElement>& L) {
  check_h_l_normalizer(H, L);
  RMat hinv = invariant_subspace(rep, H);
  std::size_t n = rep.dim();
  if (hinv.empty() || hinv[0].empty()) return {};
  std::size_t hdim = hinv[0].size();
  RMat cols(n);
  for (auto& row : cols) row.reserve(hdim * L.size());
  for (const auto& s : L) {
    std::vector<long> perm = rep.left_perm(s);
    for (std::size_t j = 0; j < hdim; ++j) {
      RVec diff(n, Rat(0));
      for (std::size_t i = 0; i < n; ++i) {
        diff[i] += hinv[i][j];
        diff[perm[i]] -= hinv[i][j];
      }
      for (std::size_t i = 0; i < n; ++i) cols[i].push_back(diff[i]);
    }
  }
  return column_space(cols);
}

SplitReport verify_splitting(const FiniteRep& rep, const std::vector<GroupElement>& H,
                             const std::vector<GroupElement>& L) {
  SplitReport rpt;
  RMat hinv = invariant_subspace(rep, H);
  RMat linv = invariant_subspace(rep, L);
  RMat cob = coboundary_subspace(rep, H, L);
  rpt.dim_h = hinv.empty() ? 0 : hinv[0].size();
  rpt.dim_l = linv.empty() ? 0 : linv[0].size();
  rpt.dim_cobnd = cob.empty() ? 0 : cob[0].size();
  rpt.dims_ok = rpt.dim_h == rpt.dim_l + rpt.dim_cobnd;
  rpt.max_abs_cross = Rat(0);
  rpt.cross_ok = true;
  for (std::size_t j = 0; j < rpt.dim_l; ++j)
    for (std::size_t t = 0; t < rpt.dim_cobnd; ++t) {
      Rat acc(0);
      for (std::size_t i = 0; i < rep.dim(); ++i) acc += linv[i][j] * cob[i][t];
      Rat a = abs(acc);
      if (a > rpt.max_abs_cross) rpt.max_abs_cross = a;
      if (acc != 0) rpt.cross_ok = false;
    }
  return rpt;
}

}  // namespace cosetlab

#include "crsb/lp.hpp"

#include <cassert>

namespace crsb {

namespace {

// Phase-I tableau: rows = equations, columns = structural vars followed by
// one artificial per row. Minimizes the artificial sum; the system is
// feasible iff the minimum is zero. Bland's rule; artificials never
// re-enter once they leave the basis. Reduced costs are recomputed from the
// artificial-basic rows each round, which keeps the bookkeeping exact.
bool phase1(const Mat& a, const Vec& b) {
  int m = a.rows(), n = a.cols();
  Mat t(m, n + m + 1);  // last column = rhs
  for (int i = 0; i < m; ++i) {
    int sgn = b[i] < Rat(0) ? -1 : 1;
    for (int j = 0; j < n; ++j) t.at(i, j) = sgn < 0 ? -a.at(i, j) : a.at(i, j);
    t.at(i, n + i) = 1;
    t.at(i, n + m) = sgn < 0 ? -b[i] : b[i];
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  std::vector<char> in_basis(n + m, 0);
  for (int i = 0; i < m; ++i) in_basis[n + i] = 1;

  while (true) {
    int enter = -1;
    for (int j = 0; j < n && enter < 0; ++j) {
      if (in_basis[j]) continue;
      Rat reduced;
      for (int i = 0; i < m; ++i)
        if (basis[i] >= n) reduced += t.at(i, j);
      if (reduced > Rat(0)) enter = j;  // Bland: least structural index
    }
    if (enter < 0) break;
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (t.at(i, enter) <= Rat(0)) continue;
      Rat ratio = t.at(i, n + m) / t.at(i, enter);
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // column nonpositive: entering cannot reduce w
    Rat inv = Rat(1) / t.at(leave, enter);
    for (int j = 0; j <= n + m; ++j) t.at(leave, j) *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t.at(i, enter).is_zero()) continue;
      Rat f = t.at(i, enter);
      for (int j = 0; j <= n + m; ++j) t.at(i, j) -= f * t.at(leave, j);
    }
    in_basis[basis[leave]] = 0;
    in_basis[enter] = 1;
    basis[leave] = enter;
  }
  Rat w;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) w += t.at(i, n + m);
  return w.is_zero();
}

}  // namespace

bool feasible_nonneg(const Mat& a, const Vec& b) { return phase1(a, b); }

bool in_cone(const std::vector<Vec>& gens, const Vec& x) {
  if (is_zero_vec(x)) return true;
  if (gens.empty()) return false;
  Mat a = Mat::from_cols(gens);
  return feasible_nonneg(a, x);
}

ConeSide cone_side(const std::vector<Vec>& gens, const Vec& x) {
  if (is_zero_vec(x)) throw arithmetic_error("cone_side: zero vector");
  if (!in_cone(gens, x)) return ConeSide::Outside;
  // Interior test: exists lambda >= 1 (all generators), t >= 1 with
  // sum lambda_i g_i - t x = 0. Substitute lambda = 1 + l', t = 1 + t'.
  int dim = int(x.size());
  int k = int(gens.size());
  Mat a(dim, k + 1);
  Vec b(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < k; ++j) {
      a.at(i, j) = gens[j][i];
      b[i] -= gens[j][i];
    }
    a.at(i, k) = -x[i];
    b[i] += x[i];
  }
  return feasible_nonneg(a, b) ? ConeSide::Interior : ConeSide::Boundary;
}

bool relint_meets_cone(const std::vector<Vec>& cell_rays, const std::vector<Vec>& gens) {
  assert(!cell_rays.empty());
  if (gens.empty()) return false;
  // exists lambda >= 1 (cell rays), mu >= 0: sum lambda_i r_i = sum mu_j g_j.
  int dim = int(cell_rays[0].size());
  int k = int(cell_rays.size()), g = int(gens.size());
  Mat a(dim, k + g);
  Vec b(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < k; ++j) {
      a.at(i, j) = cell_rays[j][i];
      b[i] -= cell_rays[j][i];
    }
    for (int j = 0; j < g; ++j) a.at(i, k + j) = -gens[j][i];
  }
  return feasible_nonneg(a, b);
}

bool relint_meets_subspace(const std::vector<Vec>& cell_rays, const Subspace& sub) {
  assert(!cell_rays.empty());
  if (sub.dim() == 0) return false;
  // exists lambda >= 1, nu free: sum lambda_i r_i = sum nu_j b_j.
  // Free vars split into nu = p - q with p,q >= 0.
  int dim = int(cell_rays[0].size());
  int k = int(cell_rays.size()), d = sub.dim();
  Mat a(dim, k + 2 * d);
  Vec b(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < k; ++j) {
      a.at(i, j) = cell_rays[j][i];
      b[i] -= cell_rays[j][i];
    }
    for (int j = 0; j < d; ++j) {
      a.at(i, k + 2 * j) = -sub.basis().at(j, i);
      a.at(i, k + 2 * j + 1) = sub.basis().at(j, i);
    }
  }
  return feasible_nonneg(a, b);
}

}  // namespace crsb

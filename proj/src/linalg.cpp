#include "crsb/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace crsb {

Vec operator+(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(const Rat& c, const Vec& v) {
  Vec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return Mat(0, 0);
  Mat m(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    assert(rows[i].size() == rows[0].size());
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::from_cols(const std::vector<Vec>& cols) {
  if (cols.empty()) return Mat(0, 0);
  Mat m(int(cols[0].size()), int(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    assert(cols[j].size() == cols[0].size());
    for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Vec Mat::row(int i) const {
  Vec r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
  return r;
}

Vec Mat::col(int j) const {
  Vec r(rows_);
  for (int i = 0; i < rows_; ++i) r[i] = at(i, j);
  return r;
}

Mat Mat::transpose() const {
  Mat m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Mat Mat::mul(const Mat& o) const {
  assert(cols_ == o.rows_);
  Mat m(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& x = at(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) m.at(i, j) += x * o.at(k, j);
    }
  return m;
}

Vec Mat::apply(const Vec& v) const {
  assert(int(v.size()) == cols_);
  Vec r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = Rat(1) / m.at(r, c);
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Rat det(Mat m) {
  assert(m.rows() == m.cols());
  Rat d = 1;
  int n = m.rows();
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!m.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return Rat(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Rat inv = Rat(1) / m.at(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (m.at(i, c).is_zero()) continue;
      Rat f = m.at(i, c) * inv;
      for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

std::optional<Mat> inverse(const Mat& m) {
  assert(m.rows() == m.cols());
  int n = m.rows();
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (int(piv.size()) != n || piv.back() >= n) return std::nullopt;
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  assert(int(b.size()) == a.rows());
  Mat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;  // inconsistent
  Vec x(a.cols());
  for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug.at(int(k), a.cols());
  return x;
}

std::vector<Vec> nullspace(const Mat& a) {
  Mat m = a;
  auto piv = rref(m);
  std::vector<char> is_pivot(a.cols(), 0);
  for (int c : piv) is_pivot[c] = 1;
  std::vector<Vec> basis;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(a.cols());
    v[f] = 1;
    for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m.at(int(k), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Subspace Subspace::span(const std::vector<Vec>& vectors, int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  if (vectors.empty()) {
    s.basis_ = Mat(0, ambient);
    return s;
  }
  Mat m = Mat::from_rows(vectors);
  auto piv = rref(m);
  Mat b(int(piv.size()), ambient);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < ambient; ++j) b.at(i, j) = m.at(i, j);
  s.basis_ = std::move(b);
  return s;
}

Subspace Subspace::full(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Mat::identity(ambient);
  return s;
}

Subspace Subspace::zero(int ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Mat(0, ambient);
  return s;
}

bool Subspace::contains(const Vec& v) const {
  // Reduce v against the RREF basis.
  Vec w = v;
  for (int i = 0; i < basis_.rows(); ++i) {
    int lead = -1;
    for (int j = 0; j < ambient_; ++j)
      if (!basis_.at(i, j).is_zero()) {
        lead = j;
        break;
      }
    if (lead < 0) continue;
    if (!w[lead].is_zero()) {
      Rat f = w[lead];  // basis pivot is 1
      for (int j = 0; j < ambient_; ++j) w[j] -= f * basis_.at(i, j);
    }
  }
  return is_zero_vec(w);
}

bool Subspace::contains(const Subspace& other) const {
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_row(i))) return false;
  return true;
}

bool Subspace::less(const Subspace& o) const {
  if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
  if (dim() != o.dim()) return dim() < o.dim();
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < ambient_; ++j) {
      if (basis_.at(i, j) != o.basis_.at(i, j)) return basis_.at(i, j) < o.basis_.at(i, j);
    }
  return false;
}

Subspace Subspace::apply(const Mat& m) const {
  std::vector<Vec> rows;
  rows.reserve(dim());
  for (int i = 0; i < dim(); ++i) rows.push_back(m.apply(basis_row(i)));
  return Subspace::span(rows, m.rows());
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  assert(u.ambient() == v.ambient());
  if (u.dim() == 0 || v.dim() == 0) return Subspace::zero(u.ambient());
  // x = U^T alpha = V^T beta  <=>  [U^T | -V^T] (alpha,beta) = 0.
  Mat sys(u.ambient(), u.dim() + v.dim());
  for (int i = 0; i < u.ambient(); ++i) {
    for (int k = 0; k < u.dim(); ++k) sys.at(i, k) = u.basis().at(k, i);
    for (int k = 0; k < v.dim(); ++k) sys.at(i, u.dim() + k) = -v.basis().at(k, i);
  }
  std::vector<Vec> gens;
  for (const Vec& ns : nullspace(sys)) {
    Vec x(u.ambient());
    for (int k = 0; k < u.dim(); ++k)
      if (!ns[k].is_zero()) x = x + ns[k] * u.basis_row(k);
    if (!is_zero_vec(x)) gens.push_back(std::move(x));
  }
  return Subspace::span(gens, u.ambient());
}

Rat inner(const Mat& gram, const Vec& x, const Vec& y) {
  Vec gy = gram.apply(y);
  Rat r = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) r += x[i] * gy[i];
  return r;
}

Subspace orth_complement_within(const Subspace& u, const Subspace& v, const Mat& gram) {
  assert(u.ambient() == v.ambient());
  if (v.dim() == 0) return Subspace::zero(v.ambient());
  // x = V^T gamma with (U G V^T) gamma = 0.
  Mat vt = v.basis().transpose();          // ambient x dimV
  Mat ugvt = u.basis().mul(gram).mul(vt);  // dimU x dimV
  std::vector<Vec> gens;
  if (u.dim() == 0) {
    return v;
  }
  for (const Vec& gamma : nullspace(ugvt)) {
    Vec x = vt.apply(gamma);
    if (!is_zero_vec(x)) gens.push_back(std::move(x));
  }
  return Subspace::span(gens, v.ambient());
}

Mat reflection_in_normal(const Vec& normal, const Mat& gram) {
  int n = int(normal.size());
  Rat nn = inner(gram, normal, normal);
  if (nn.is_zero()) throw arithmetic_error("reflection normal has zero norm");
  Vec gn = gram.apply(normal);
  Mat m = Mat::identity(n);
  Rat c = Rat(2) / nn;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) -= c * normal[i] * gn[j];
  return m;
}

Mat reflect_along(const Subspace& h, const Subspace& v, const Mat& gram) {
  Subspace line = orth_complement_within(h, v, gram);
  if (line.dim() != 1) throw arithmetic_error("reflect_along: subspace is not codimension 1");
  return reflection_in_normal(line.basis_row(0), gram);
}

}  // namespace crsb

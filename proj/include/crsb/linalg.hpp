#pragma once

#include <optional>
#include <vector>

#include "crsb/rational.hpp"

namespace crsb {

using Vec = std::vector<Rat>;

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rat& c, const Vec& v);
bool is_zero_vec(const Vec& v);

/// Dense matrix of exact rationals, row major.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static Mat identity(int n);
  static Mat from_rows(const std::vector<Vec>& rows);
  static Mat from_cols(const std::vector<Vec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  Vec row(int i) const;
  Vec col(int j) const;
  Mat transpose() const;
  Mat mul(const Mat& o) const;
  Vec apply(const Vec& v) const;  // matrix * column vector

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

/// In-place reduced row echelon form. Returns pivot column indices (rank = size).
std::vector<int> rref(Mat& m);

Rat det(Mat m);
std::optional<Mat> inverse(const Mat& m);
/// One solution of A x = b, if consistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);
/// Basis of the nullspace of A.
std::vector<Vec> nullspace(const Mat& a);

/// Linear subspace, stored as a canonical RREF row basis (unique per subspace).
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  static Subspace span(const std::vector<Vec>& vectors, int ambient);
  static Subspace full(int ambient);
  static Subspace zero(int ambient);

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }
  Vec basis_row(int i) const { return basis_.row(i); }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  /// Strict total order (ambient, dim, lexicographic basis entries); for canonical sorting.
  bool less(const Subspace& o) const;

  /// Image under a linear map (ambient matrix).
  Subspace apply(const Mat& m) const;

 private:
  int ambient_;
  Mat basis_;
};

Subspace intersect(const Subspace& u, const Subspace& v);
/// Gram-form inner product x^T G y.
Rat inner(const Mat& gram, const Vec& x, const Vec& y);
/// { x in V : <x,u>_G = 0 for all u in U }.
Subspace orth_complement_within(const Subspace& u, const Subspace& v, const Mat& gram);
/// Ambient linear involution fixing the G-hyperplane normal^perp and negating normal.
Mat reflection_in_normal(const Vec& normal, const Mat& gram);
/// Reflection of V along a codimension-1 subspace H of V (identity on V^perp_G).
/// Throws if H is not codimension 1 in V.
Mat reflect_along(const Subspace& h, const Subspace& v, const Mat& gram);

}  // namespace crsb

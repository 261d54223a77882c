#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crsb/linalg.hpp"

namespace crsb {

/// Symmetric Coxeter matrix; off-diagonal entries restricted to {2,3,4,6}
/// so the spherical realization stays rational.
struct CoxeterMatrix {
  int rank = 0;
  std::vector<int> entries;  // rank x rank, row major

  int at(int s, int t) const { return entries[size_t(s) * rank + t]; }
  int& at(int s, int t) { return entries[size_t(s) * rank + t]; }

  static CoxeterMatrix of(int rank, std::initializer_list<int> vals);
  /// Block-diagonal product (m(s,t) = 2 across blocks).
  static CoxeterMatrix product(const CoxeterMatrix& a, const CoxeterMatrix& b);

  /// Empty on success, otherwise a message naming the offending entry.
  std::optional<std::string> validate() const;
};

using TypeSet = uint32_t;  // bitmask over generator indices

inline bool type_in(TypeSet j, int s) { return (j >> s) & 1u; }
inline TypeSet full_type_set(int rank) { return (rank >= 32) ? ~0u : ((1u << rank) - 1u); }

/// Finite Coxeter system with fully enumerated elements.
///
/// Elements are indexed 0..order-1 (0 = identity) in shortlex BFS order, so
/// indices are sorted by length first. Each element carries its shortlex-least
/// reduced word and its matrix in the weight-basis reflection representation
/// (always integral for crystallographic types; stored exact).
class CoxeterSystem {
 public:
  CoxeterMatrix matrix;
  int rank = 0;

  // Realization data (weight basis).
  std::vector<std::vector<long long>> cartan;  // integer Cartan matrix
  Mat gram;                                    // Gram form of the fundamental weights
  std::vector<Mat> elem_matrix;                // per element

  // Group data.
  int order = 0;
  std::vector<std::vector<uint8_t>> words;  // shortlex reduced word per element
  std::vector<int> lengths;
  std::vector<int> rmul_;  // order x rank: index of w*s
  std::vector<int> inverse_;
  int longest = 0;  // index of w0

  int mul_gen(int w, int s) const { return rmul_[size_t(w) * rank + s]; }
  /// General product by folding the reduced word of v.
  int mul(int w, int v) const {
    int r = w;
    for (uint8_t s : words[v]) r = mul_gen(r, s);
    return r;
  }
  int inv(int w) const { return inverse_[w]; }
  int length(int w) const { return lengths[w]; }
  int gen_elem(int s) const { return mul_gen(0, s); }
  bool is_descent_right(int w, int s) const { return lengths[mul_gen(w, s)] < lengths[w]; }

  const Mat& mat_of(int w) const { return elem_matrix[w]; }
  Vec act(int w, const Vec& x) const { return elem_matrix[w].apply(x); }
  Vec fundamental_ray(int s) const;

  /// Unique minimal-length element of w W_J.
  int minimal_coset_rep(int w, TypeSet j) const;
  /// J* = w0 J w0 as a type set.
  TypeSet opposition_type_map(TypeSet j) const;
  /// Generator index of w0 s w0.
  int opposition_of_gen(int s) const;
};

using CoxeterSystemPtr = std::shared_ptr<const CoxeterSystem>;

/// Enumerates the full group; throws std::invalid_argument on invalid,
/// non-crystallographic or non-finite matrices (message cites the entry).
CoxeterSystemPtr build_system(const CoxeterMatrix& m);

/// Index of the longest element.
int longest_element(const CoxeterSystem& sys);

/// Named presets "A1","A2","A3","A4","B2","B3","B4","G2" and "x"-products
/// such as "A2xA1". Throws std::invalid_argument on unknown names.
CoxeterMatrix coxeter_matrix_preset(const std::string& name);

}  // namespace crsb

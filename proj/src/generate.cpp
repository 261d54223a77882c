#include "crsb/generate.hpp"

#include <algorithm>
#include <stdexcept>

namespace crsb {

namespace {

std::vector<std::vector<int>> echelon_mod(std::vector<std::vector<int>> rows, int q) {
  int m = int(rows.size());
  int d = rows.empty() ? 0 : int(rows[0].size());
  int r = 0;
  for (int c = 0; c < d && r < m; ++c) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (rows[i][c] % q != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[p], rows[r]);
    int lead = ((rows[r][c] % q) + q) % q;
    int inv = 1;
    for (int k = 1; k < q; ++k)
      if (k * lead % q == 1) inv = k;
    for (int j = 0; j < d; ++j) rows[r][j] = rows[r][j] * inv % q;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      int f = ((rows[i][c] % q) + q) % q;
      if (f == 0) continue;
      for (int j = 0; j < d; ++j) rows[i][j] = ((rows[i][j] - f * rows[r][j]) % q + q) % q;
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

int det_mod(std::vector<std::vector<int>> m, int q) {
  int d = int(m.size());
  int det = 1;
  for (int c = 0; c < d; ++c) {
    int p = -1;
    for (int i = c; i < d; ++i)
      if (m[i][c] % q != 0) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = (q - det) % q;
    }
    det = det * m[c][c] % q;
    int inv = 1;
    for (int k = 1; k < q; ++k)
      if (k * m[c][c] % q == 1) inv = k;
    for (int i = c + 1; i < d; ++i) {
      int f = m[i][c] * inv % q;
      for (int j = 0; j < d; ++j) m[i][j] = ((m[i][j] - f * m[c][j]) % q + q) % q;
    }
  }
  return det % q;
}

}  // namespace

std::vector<int> flag_automorphism(const Building& b, const std::vector<std::vector<int>>& m) {
  const auto& prov = *b.provenance;
  if (prov.kind != Provenance::Kind::Flag)
    throw std::invalid_argument("flag_automorphism: not a flag building");
  int q = prov.q;
  int types = int(prov.subspaces.size());
  // Per-type subspace permutation.
  std::vector<std::vector<int>> sub_perm(types);
  for (int t = 0; t < types; ++t) {
    sub_perm[t].resize(prov.subspaces[t].size());
    for (size_t i = 0; i < prov.subspaces[t].size(); ++i) {
      std::vector<std::vector<int>> image;
      for (const auto& row : prov.subspaces[t][i]) {
        std::vector<int> out(row.size(), 0);
        for (size_t j = 0; j < row.size(); ++j)
          for (size_t k = 0; k < row.size(); ++k) out[j] = (out[j] + row[k] * m[k][j]) % q;
        image.push_back(out);
      }
      auto e = echelon_mod(image, q);
      auto it = prov.subspace_index[t].find(e);
      if (it == prov.subspace_index[t].end())
        throw std::invalid_argument("flag_automorphism: matrix not invertible");
      sub_perm[t][i] = it->second;
    }
  }
  std::vector<int> perm(b.n_chambers);
  for (int c = 0; c < b.n_chambers; ++c) {
    std::vector<int> flag = prov.chamber_flag[c];
    for (int t = 0; t < types; ++t) flag[t] = sub_perm[t][flag[t]];
    perm[c] = prov.flag_index.at(flag);
  }
  return perm;
}

std::vector<int> thin_automorphism(const Building& b, int w) {
  std::vector<int> perm(b.n_chambers);
  for (int c = 0; c < b.n_chambers; ++c) perm[c] = b.sys->mul(w, c);
  return perm;
}

std::vector<int> join_automorphism(const Building& b, const std::vector<int>& pa,
                                   const std::vector<int>& pb) {
  const auto& prov = *b.provenance;
  if (prov.kind != Provenance::Kind::Join)
    throw std::invalid_argument("join_automorphism: not a join");
  int nb = prov.join_right->n_chambers;
  std::vector<int> perm(b.n_chambers);
  for (int c = 0; c < b.n_chambers; ++c) perm[c] = pa[c / nb] * nb + pb[c % nb];
  return perm;
}

std::vector<std::vector<int>> random_gl(int d, int q, Rng& rng) {
  while (true) {
    std::vector<std::vector<int>> m(d, std::vector<int>(d));
    for (auto& row : m)
      for (int& x : row) x = int(rng.below(uint64_t(q)));
    if (det_mod(m, q) != 0) return m;
  }
}

std::optional<std::vector<int>> random_automorphism(const Building& b, Rng& rng) {
  if (!b.provenance) return std::nullopt;
  const auto& prov = *b.provenance;
  switch (prov.kind) {
    case Provenance::Kind::Flag:
      return flag_automorphism(b, random_gl(prov.proj_dim + 1, prov.q, rng));
    case Provenance::Kind::Thin:
      return thin_automorphism(b, int(rng.below(uint64_t(b.sys->order))));
    case Provenance::Kind::Rank1: {
      // Random permutation of the chambers (all are automorphisms).
      std::vector<int> perm(b.n_chambers);
      for (int i = 0; i < b.n_chambers; ++i) perm[i] = i;
      for (int i = b.n_chambers - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.below(uint64_t(i + 1))]);
      return perm;
    }
    case Provenance::Kind::Join: {
      auto pa = random_automorphism(*prov.join_left, rng);
      auto pb = random_automorphism(*prov.join_right, rng);
      if (!pa || !pb) return std::nullopt;
      return join_automorphism(b, *pa, *pb);
    }
    default:
      return std::nullopt;
  }
}

GeneratedSubcomplex random_convex_subcomplex(const BuildingPtr& b, Rng& rng) {
  bool use_fixed = rng.below(4) == 3;
  if (use_fixed) {
    if (auto g = random_automorphism(*b, rng)) {
      // Cyclic group generated by g.
      std::vector<std::vector<int>> autos;
      std::vector<int> cur = *g;
      std::vector<int> id(b->n_chambers);
      for (int i = 0; i < b->n_chambers; ++i) id[i] = i;
      while (cur != id) {
        autos.push_back(cur);
        std::vector<int> next(b->n_chambers);
        for (int i = 0; i < b->n_chambers; ++i) next[i] = (*g)[cur[i]];
        cur = std::move(next);
        if (autos.size() > 4096) throw arithmetic_error("automorphism order runaway");
      }
      if (autos.empty()) autos.push_back(id);
      return {fixed_subcomplex(b, autos),
              "fixed subcomplex of cyclic group, order " + std::to_string(autos.size() + 0)};
    }
  }
  uint64_t n = b->simplices.size();
  int sa = int(rng.below(n));
  int sb = int(rng.below(n));
  return {convex_hull(b, {sa, sb}),
          "convex hull of simplices " + std::to_string(sa) + "," + std::to_string(sb)};
}

}  // namespace crsb

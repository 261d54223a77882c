#include "crsb/sigma.hpp"

#include <algorithm>
#include <stdexcept>

namespace crsb {

int SigmaComplex::vertex_id(int type, int rep) const {
  auto it = vertex_index_.find({type, rep});
  if (it == vertex_index_.end()) throw std::out_of_range("sigma vertex not found");
  return it->second;
}

int SigmaComplex::cell_id(TypeSet types, int w) const {
  TypeSet j = full_type_set(sys->rank) & ~types;
  int rep = sys->minimal_coset_rep(w, j);
  auto it = cell_index_.find({types, rep});
  if (it == cell_index_.end()) throw std::out_of_range("sigma cell not found");
  return it->second;
}

int SigmaComplex::cell_by_verts(const std::vector<int>& sorted_verts) const {
  auto it = cell_by_verts_.find(sorted_verts);
  return it == cell_by_verts_.end() ? -1 : it->second;
}

int SigmaComplex::chamber_vertex(int w, int s) const {
  TypeSet j = full_type_set(sys->rank) & ~(1u << s);
  return vertex_id(s, sys->minimal_coset_rep(w, j));
}

int SigmaComplex::thin_opposite(int cell) const {
  const Cell& c = cells[cell];
  TypeSet types_op = sys->opposition_type_map(c.types);
  return cell_id(types_op, sys->mul(c.rep, sys->longest));
}

SigmaComplex coxeter_complex(const CoxeterSystemPtr& sys) {
  SigmaComplex sc;
  sc.sys = sys;
  sc.real = realize(sys);
  int n = sys->rank;
  TypeSet full = full_type_set(n);

  for (int s = 0; s < n; ++s) {
    TypeSet j = full & ~(1u << s);
    for (int w = 0; w < sys->order; ++w) {
      int rep = sys->minimal_coset_rep(w, j);
      auto key = std::make_pair(s, rep);
      if (sc.vertex_index_.count(key)) continue;
      int vid = int(sc.vertices.size());
      sc.vertex_index_[key] = vid;
      sc.vertices.push_back({s, rep, sys->act(rep, sys->fundamental_ray(s))});
    }
  }

  for (TypeSet types = 1; types <= full; ++types) {
    if ((types & full) != types) continue;
    TypeSet j = full & ~types;
    for (int w = 0; w < sys->order; ++w) {
      int rep = sys->minimal_coset_rep(w, j);
      auto key = std::make_pair(types, rep);
      if (sc.cell_index_.count(key)) continue;
      SigmaComplex::Cell cell;
      cell.types = types;
      cell.rep = rep;
      for (int s = 0; s < n; ++s) {
        if (!type_in(types, s)) continue;
        TypeSet jv = full & ~(1u << s);
        cell.verts.push_back(sc.vertex_id(s, sys->minimal_coset_rep(rep, jv)));
      }
      std::sort(cell.verts.begin(), cell.verts.end());
      cell.dim = int(cell.verts.size()) - 1;
      for (int v : cell.verts) cell.rays.push_back(sc.vertices[v].ray);
      int id = int(sc.cells.size());
      sc.cell_index_[key] = id;
      sc.cell_by_verts_[cell.verts] = id;
      sc.cells.push_back(std::move(cell));
    }
  }

  sc.chamber_cell.resize(sys->order);
  for (int w = 0; w < sys->order; ++w) sc.chamber_cell[w] = sc.cell_id(full, w);
  return sc;
}

}  // namespace crsb

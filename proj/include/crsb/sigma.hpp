#pragma once

#include <map>
#include <memory>
#include <vector>

#include "crsb/geometry.hpp"

namespace crsb {

/// The Coxeter complex of a finite system: simplices are the proper parabolic
/// cosets w W_J, realized as spherical cells whose cones tile the sphere.
class SigmaComplex {
 public:
  struct Vertex {
    int type;  // generator index s (cotype S \ {s})
    int rep;   // minimal coset representative
    Vec ray;
  };

  struct Cell {
    TypeSet types;           // vertex types present (J = complement)
    int rep;                 // minimal representative of w W_J
    std::vector<int> verts;  // sorted vertex ids
    int dim;
    std::vector<Vec> rays;  // vertex rays, aligned with verts
  };

  CoxeterSystemPtr sys;
  Realization real;

  std::vector<Vertex> vertices;
  std::vector<Cell> cells;
  std::vector<int> chamber_cell;  // element index -> cell id of its chamber

  int vertex_id(int type, int rep) const;
  int cell_id(TypeSet types, int w) const;  // w any element of the coset
  int cell_by_verts(const std::vector<int>& sorted_verts) const;

  /// Vertex of type s of the chamber of w.
  int chamber_vertex(int w, int s) const;

  /// The antipodal simplex: -|w W_J| = |w w0 W_{J*}|.
  int thin_opposite(int cell) const;

  int dim() const { return sys->rank - 1; }

 private:
  friend SigmaComplex coxeter_complex(const CoxeterSystemPtr& sys);
  std::map<std::pair<int, int>, int> vertex_index_;          // (type, rep) -> vid
  std::map<std::pair<TypeSet, int>, int> cell_index_;        // (types, minrep) -> cell
  std::map<std::vector<int>, int> cell_by_verts_;
};

SigmaComplex coxeter_complex(const CoxeterSystemPtr& sys);

}  // namespace crsb

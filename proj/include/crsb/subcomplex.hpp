#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "crsb/building.hpp"

namespace crsb {

/// Face-closed (unless stated otherwise) set of simplices of a building.
class Subcomplex {
 public:
  Subcomplex() = default;
  Subcomplex(BuildingPtr b, std::vector<int> ids, bool close_faces);

  const Building& building() const { return *b_; }
  BuildingPtr building_ptr() const { return b_; }
  const std::vector<int>& ids() const { return ids_; }
  bool contains(int sid) const { return sid >= 0 && member_[sid]; }
  bool empty() const { return ids_.empty(); }
  int size() const { return int(ids_.size()); }
  bool is_face_closed() const;

  /// Member simplices of the given dimension, ascending ids.
  std::vector<int> of_dim(int dim) const;
  int max_dim() const;

  void add(int sid);  // keeps ids_ sorted; does not close faces
  void add_with_faces(int sid);

  bool operator==(const Subcomplex& o) const { return b_ == o.b_ && ids_ == o.ids_; }

 private:
  BuildingPtr b_;
  std::vector<char> member_;
  std::vector<int> ids_;
};

struct PurityResult {
  int dim = -1;
  bool pure = false;
  int witness = -1;  // a lonely simplex (max dimension among lonely) when not pure
};

/// Dimension and purity; throws std::invalid_argument on the empty subcomplex.
PurityResult purity_and_dimension(const Subcomplex& a);

struct ChamberGraph {
  std::vector<int> nodes;                             // top-dimensional simplices
  std::vector<std::tuple<int, int, int>> edges;       // (node i, node j, shared facet)
  bool connected = false;
};

/// Dual graph on the m-simplices; pre: pure of dimension >= 1.
ChamberGraph chamber_graph(const Subcomplex& a);

/// Simplices fixed vertexwise by every listed chamber permutation.
/// Throws std::invalid_argument (with a witness pair in the message) when a
/// permutation does not preserve delta.
Subcomplex fixed_subcomplex(const BuildingPtr& b, const std::vector<std::vector<int>>& autos);

/// The whole building as a subcomplex.
Subcomplex full_subcomplex(const BuildingPtr& b);

}  // namespace crsb

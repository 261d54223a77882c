#include "crsb/subcomplex.hpp"

#include <algorithm>
#include <stdexcept>

#include "crsb/union_find.hpp"

namespace crsb {

Subcomplex::Subcomplex(BuildingPtr b, std::vector<int> ids, bool close_faces)
    : b_(std::move(b)), member_(b_->simplices.size(), 0) {
  for (int sid : ids) {
    if (sid < 0 || sid >= int(member_.size()))
      throw std::invalid_argument("subcomplex simplex id out of range");
    if (close_faces) {
      for (int f : b_->faces_of(sid)) member_[f] = 1;
    } else {
      member_[sid] = 1;
    }
  }
  for (int i = 0; i < int(member_.size()); ++i)
    if (member_[i]) ids_.push_back(i);
}

bool Subcomplex::is_face_closed() const {
  for (int sid : ids_)
    for (int f : b_->faces_of(sid))
      if (!member_[f]) return false;
  return true;
}

std::vector<int> Subcomplex::of_dim(int dim) const {
  std::vector<int> out;
  for (int sid : ids_)
    if (b_->simplices[sid].dim == dim) out.push_back(sid);
  return out;
}

int Subcomplex::max_dim() const {
  int m = -1;
  for (int sid : ids_) m = std::max(m, b_->simplices[sid].dim);
  return m;
}

void Subcomplex::add(int sid) {
  if (member_[sid]) return;
  member_[sid] = 1;
  ids_.insert(std::lower_bound(ids_.begin(), ids_.end(), sid), sid);
}

void Subcomplex::add_with_faces(int sid) {
  for (int f : b_->faces_of(sid)) add(f);
}

PurityResult purity_and_dimension(const Subcomplex& a) {
  if (a.empty()) throw std::invalid_argument("purity_and_dimension: empty subcomplex");
  const Building& b = a.building();
  PurityResult r;
  r.dim = a.max_dim();
  std::vector<char> covered(b.simplices.size(), 0);
  for (int top : a.of_dim(r.dim))
    for (int f : b.faces_of(top)) covered[f] = 1;
  r.pure = true;
  for (int sid : a.ids()) {
    if (covered[sid]) continue;
    r.pure = false;
    if (r.witness < 0 || b.simplices[sid].dim > b.simplices[r.witness].dim) r.witness = sid;
  }
  return r;
}

ChamberGraph chamber_graph(const Subcomplex& a) {
  PurityResult p = purity_and_dimension(a);
  if (!p.pure || p.dim < 1)
    throw std::invalid_argument("chamber_graph: subcomplex must be pure of dimension >= 1");
  const Building& b = a.building();
  ChamberGraph g;
  g.nodes = a.of_dim(p.dim);
  std::vector<int> node_index(b.simplices.size(), -1);
  for (int i = 0; i < int(g.nodes.size()); ++i) node_index[g.nodes[i]] = i;
  // facet -> incident nodes
  std::map<int, std::vector<int>> by_facet;
  for (int i = 0; i < int(g.nodes.size()); ++i)
    for (int f : b.facets_of(g.nodes[i])) by_facet[f].push_back(i);
  UnionFind uf(int(g.nodes.size()));
  for (auto& [f, inc] : by_facet)
    for (size_t i = 0; i < inc.size(); ++i)
      for (size_t j = i + 1; j < inc.size(); ++j) {
        g.edges.emplace_back(inc[i], inc[j], f);
        uf.unite(inc[i], inc[j]);
      }
  g.connected = true;
  for (int i = 1; i < int(g.nodes.size()); ++i)
    if (uf.find(i) != uf.find(0)) g.connected = false;
  return g;
}

Subcomplex fixed_subcomplex(const BuildingPtr& b, const std::vector<std::vector<int>>& autos) {
  for (const auto& perm : autos) {
    if (auto bad = automorphism_violation(*b, perm)) {
      throw std::invalid_argument("not a delta-preserving automorphism, witness chambers (" +
                                  std::to_string(bad->first) + "," +
                                  std::to_string(bad->second) + ")");
    }
  }
  std::vector<char> vertex_fixed(b->vertices.size(), 1);
  for (const auto& perm : autos) {
    auto vp = vertex_permutation(*b, perm);
    for (size_t v = 0; v < vp.size(); ++v)
      if (vp[v] != int(v)) vertex_fixed[v] = 0;
  }
  std::vector<int> ids;
  for (int sid = 0; sid < int(b->simplices.size()); ++sid) {
    bool all = true;
    for (int v : b->simplices[sid].verts)
      if (!vertex_fixed[v]) {
        all = false;
        break;
      }
    if (all) ids.push_back(sid);
  }
  return Subcomplex(b, std::move(ids), false);
}

Subcomplex full_subcomplex(const BuildingPtr& b) {
  std::vector<int> ids(b->simplices.size());
  for (int i = 0; i < int(ids.size()); ++i) ids[i] = i;
  return Subcomplex(b, std::move(ids), false);
}

}  // namespace crsb

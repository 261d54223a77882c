#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "crsb/parallel.hpp"
#include "crsb/sigma.hpp"

namespace crsb {

class Building;
using BuildingPtr = std::shared_ptr<const Building>;

/// Construction provenance, kept so the fuzz driver can sample
/// type-preserving automorphisms structurally.
struct Provenance {
  enum class Kind { Unknown, Flag, Rank1, Thin, Join };
  Kind kind = Kind::Unknown;

  // Flag geometry over F_q: subspaces per type as canonical echelon bases.
  int proj_dim = 0;
  int q = 0;
  std::vector<std::vector<std::vector<std::vector<int>>>> subspaces;  // [type][id] = basis rows
  std::vector<std::map<std::vector<std::vector<int>>, int>> subspace_index;
  std::vector<std::vector<int>> chamber_flag;  // [chamber][type] = subspace id
  std::map<std::vector<int>, int> flag_index;

  int rank1_count = 0;

  BuildingPtr join_left, join_right;
};

/// A finite W-metric building: chamber set with Weyl distance table, plus the
/// induced typed simplicial complex (vertices = cotype-1 residues).
class Building {
 public:
  CoxeterSystemPtr sys;
  std::shared_ptr<const SigmaComplex> sigma;  // model apartment
  int n_chambers = 0;

  std::string preset;  // provenance label, "" when loaded raw
  std::shared_ptr<const Provenance> provenance;

  int delta(int c, int d) const { return delta_[size_t(c) * n_chambers + d]; }
  bool chambers_opposite(int c, int d) const { return delta(c, d) == sys->longest; }
  const std::vector<int32_t>& delta_table() const { return delta_; }

  // Typed vertex view.
  struct BVertex {
    int type;
    int min_chamber;
  };
  std::vector<BVertex> vertices;
  int chamber_vertex(int c, int type) const { return chamber_vertex_[c][type]; }
  const std::vector<int>& chamber_vertices(int c) const { return chamber_vertex_[c]; }

  // Simplex census (all faces of all chambers).
  struct Simplex {
    std::vector<int> verts;  // sorted vertex ids
    TypeSet types;
    int dim;
    std::vector<int> carriers;  // chambers containing it, sorted
  };
  std::vector<Simplex> simplices;
  int simplex_by_verts(const std::vector<int>& sorted_verts) const;  // -1 if absent
  int chamber_simplex(int c) const { return chamber_simplex_[c]; }
  /// All proper and improper faces (nonempty vertex subsets), sorted ids.
  std::vector<int> faces_of(int sid) const;
  /// Codimension-1 faces.
  std::vector<int> facets_of(int sid) const;

  const std::vector<int>& s_adjacent(int c, int s) const { return adj_[s][c]; }

  /// Chambers of the s-panel of c (including c).
  std::vector<int> panel_of(int c, int s) const;

  int rank() const { return sys->rank; }
  int top_dim() const { return sys->rank - 1; }

  // Chart cache keyed by the defining opposite pair, thread safe.
  mutable std::mutex cache_mutex;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const struct ApartmentChart>> chart_cache;
  mutable std::optional<std::vector<struct Apartment>> apartments_cache;

 private:
  friend BuildingPtr make_building(CoxeterSystemPtr sys, int n, std::vector<int32_t> delta,
                                   std::string preset, std::shared_ptr<const Provenance> prov);
  std::vector<int32_t> delta_;
  std::vector<std::vector<int>> chamber_vertex_;
  std::vector<int> chamber_simplex_;
  std::map<std::vector<int>, int> simplex_index_;
  std::vector<std::vector<std::vector<int>>> adj_;  // [s][c] -> chambers at delta = s
};

/// Builds the derived structures from a delta table; validates panel sizes
/// (every chamber needs an s-neighbor for every s). Heavier WD validation is
/// verify_wd_axioms.
BuildingPtr make_building(CoxeterSystemPtr sys, int n, std::vector<int32_t> delta,
                          std::string preset = "",
                          std::shared_ptr<const Provenance> prov = nullptr);

/// Recovers delta from per-generator panel partitions by gallery BFS.
/// The result should be fed to verify_wd_axioms; garbage in, report out.
BuildingPtr building_from_adjacency(CoxeterSystemPtr sys, int n,
                                    const std::vector<std::vector<std::vector<int>>>& panels,
                                    std::string preset = "");

/// Coxeter complex of sys as a thin building (delta(u,v) = u^{-1} v).
BuildingPtr thin_building(CoxeterSystemPtr sys, std::string preset = "");

/// Flag complex of the projective geometry of dimension n over F_q.
/// n in {1,2,3}, q in {2,3}.
BuildingPtr flag_building(int n, int q);

/// N chambers over A1, pairwise opposite.
BuildingPtr rank1_building(int n);

/// Spherical join: block-product system, chambers = pairs, delta componentwise.
BuildingPtr join_buildings(const BuildingPtr& a, const BuildingPtr& b);

struct WdViolation {
  std::string rule;
  int c = -1, d = -1, e = -1, s = -1;
  std::string detail;
};

struct WdReport {
  std::vector<WdViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Exhaustive check of the Weyl-distance axioms over all chamber pairs and
/// generators. The hot pair scan honors the execution policy.
WdReport verify_wd_axioms(const Building& b, Exec ex = Exec::parallel);

/// Injective delta-preserving chart of the model apartment.
struct ApartmentChart {
  const Building* b = nullptr;
  int base_c = -1, base_e = -1;     // opposite pair spanning the apartment
  std::vector<int> chamber_img;     // element index -> chamber
  std::vector<int> vertex_img;      // sigma vertex -> building vertex
  std::unordered_map<int, int> chamber_pre;
  std::unordered_map<int, int> vertex_pre;

  /// Building simplex id of a sigma cell.
  int push_cell(int sigma_cell) const;
  /// Sigma cell id of a building simplex, -1 if not in the apartment.
  int pull_simplex(int building_simplex) const;
  bool contains_simplex(int building_simplex) const { return pull_simplex(building_simplex) >= 0; }
  std::vector<int> image_chambers_sorted() const;
};

using ChartPtr = std::shared_ptr<const ApartmentChart>;

/// Apartment containing both chambers: extends delta(c,d) to the longest
/// element along increasing galleries, then collects the chambers on minimal
/// galleries between the resulting opposite pair. Cached per opposite pair.
ChartPtr apartment_containing(const Building& b, int c, int d);

struct Apartment {
  int base_c, base_e;
  std::vector<int> chambers;  // sorted image
};

/// All apartments (images deduplicated), from opposite chamber pairs.
std::vector<Apartment> enumerate_apartments(const Building& b);

/// Cached variant of enumerate_apartments.
const std::vector<Apartment>& all_apartments(const Building& b);

/// Opposition of simplices via apartment pull-back.
bool are_opposite(const Building& b, int simplex_a, int simplex_b);

/// Checks that a chamber permutation preserves delta; returns a violating
/// pair if not.
std::optional<std::pair<int, int>> automorphism_violation(const Building& b,
                                                          const std::vector<int>& perm);

/// Vertex permutation induced by a delta-preserving chamber permutation.
std::vector<int> vertex_permutation(const Building& b, const std::vector<int>& perm);

}  // namespace crsb

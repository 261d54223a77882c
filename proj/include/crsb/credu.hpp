#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crsb/convexity.hpp"
#include "crsb/subcomplex.hpp"

namespace crsb {

/// A falsified structural invariant: on valid inputs these never fire, so
/// every one carries a replayable witness description.
struct Violation {
  std::string kind;
  std::string detail;
};

class ViolationError : public std::runtime_error {
 public:
  ViolationError(std::string kind, std::string detail)
      : std::runtime_error(kind + ": " + detail), v{std::move(kind), std::move(detail)} {}
  Violation v;
};

/// All simplices of A of the same dimension opposite to sid.
std::vector<int> opposites_in(const Subcomplex& a, int sid, Exec ex = Exec::parallel);

enum class CrMode { All, Vertices, OnePair };

struct CrCertificate {
  bool completely_reducible = false;
  CrMode mode = CrMode::All;
  int witness = -1;                   // simplex with empty opposite set, on failure
  std::pair<int, int> pair{-1, -1};   // found opposite top pair (OnePair)
};

/// Serre-style decision procedures. The three modes agree on convex inputs;
/// the acceptance suite crosses them against each other.
CrCertificate complete_reducibility(const Subcomplex& a, CrMode mode, Exec ex = Exec::parallel);

/// An m-sphere spanned by an opposite pair of m-simplices of A inside an
/// apartment chart, together with all simplices of A lying in the span.
struct LeviSphere {
  int a = -1, b = -1;  // opposite top pair, building simplex ids
  ChartPtr chart;
  Subspace span;               // chart coordinates, dim m+1
  std::vector<int> simplices;  // sorted building ids covering the sphere
  std::vector<int> top;        // the m-simplices among them
  int m = -1;

  bool contains(int sid) const;
};

/// Throws ViolationError when the sphere is not contained in A.
LeviSphere levi_sphere(const Subcomplex& a, int sa, int sb);

/// The constructed opposite of c in A obtained by extending the geodesic from
/// the barycenter of c through the barycenter of s.a inside s. Searches the
/// apartments containing both simplices for one that carries the extension
/// arc inside s; distinct results from different apartments are a violation.
int extend_to_opposite(const Subcomplex& a, int c, const LeviSphere& s);

/// A Levi sphere containing both given m-simplices.
LeviSphere common_levi_sphere(const Subcomplex& a, int sa, int sb);

/// (m-1)-simplices of A contained in at least three m-simplices of A.
std::vector<int> singular_panels(const Subcomplex& a);

struct Wall {
  Subspace sub;             // great-sphere subspace, codim 1 in the Levi span
  Vec normal;               // Gram-orthogonal direction within the span
  std::vector<int> panels;  // carried singular panels (building ids)
};

/// Walls of a Levi sphere; verifies each wall is a union of singular panels.
/// `singular` may pass a precomputed singular_panels(a) result.
std::vector<Wall> walls_in(const Subcomplex& a, const LeviSphere& s,
                           const std::vector<int>* singular = nullptr);

/// Hemisphere of s on one side of the wall: faces of the tops with the given
/// sign, including the boundary cells on the wall.
std::vector<int> hemisphere(const LeviSphere& s, const Wall& wall, int side, const Mat& gram);

/// Wall surgery: replaces one hemisphere of s by a hemisphere of s2 with the
/// same boundary wall, and revalidates the result as a Levi sphere.
LeviSphere surgery(const Subcomplex& a, const LeviSphere& s, const Wall& wall, int side,
                   const LeviSphere& s2, int side2);

struct ReflectionData {
  std::vector<Wall> walls;
  std::vector<Mat> group;                     // W_S as ambient matrices, identity first
  std::vector<std::vector<int>> group_words;  // words over simple generators
  std::vector<int> simple_walls;              // wall indices bounding the base region
  CoxeterMatrix ws_matrix;                    // Coxeter matrix of the simple system
  Subspace s0;                                // intersection of all walls (trivial factor)
  Subspace splus;                             // Gram-orthogonal complement in the span
  std::vector<int> base_class;                // tops of the fundamental region
  std::vector<int> base_sign;                 // its sign vector (one per wall)

  int order() const { return int(group.size()); }
};

ReflectionData reflection_data(const Subcomplex& a, const LeviSphere& s);

/// Sign of a top simplex of s against each wall (strict by construction).
std::vector<int> sign_vector(const LeviSphere& s, const std::vector<Wall>& walls,
                             const Mat& gram, int top_simplex);

struct TClassPartition {
  std::vector<int> tops;                    // all m-simplices of A, ascending
  std::vector<std::vector<int>> classes;    // partition, ordered by least member
  std::vector<int> class_of_top;            // aligned with tops
  std::vector<std::vector<int>> boundary_panels;  // per class: singular panels met
  std::vector<std::vector<int>> internal_panels;  // per class: panels crossed inside

  int class_of(int sid) const;
};

/// Dual-graph union-find joining across non-singular panels only.
TClassPartition t_classes(const Subcomplex& a);

/// Isometry between Levi spheres fixing their intersection pointwise
/// (composed through a third sphere when they share no m-simplex). Returned
/// as an ambient matrix whose restriction to s.span is the map.
Mat levi_isometry(const Subcomplex& a, const LeviSphere& s, const LeviSphere& s2);

struct Decomposition {
  bool precheck_ok = false;  // convex + completely reducible
  ConvexityCertificate convexity;
  CrCertificate cr;
  int m = -1;
  int k = -1;  // number of 0-sphere join factors = dim S_0
  bool z_present = false;
  CoxeterMatrix z_matrix;  // rank 0 when Z empty
  BuildingPtr z;           // null when Z empty
  std::vector<std::vector<int>> z_classes;  // t-class members per Z chamber
  bool z_wd_ok = false;
  bool z_thick = false;
  std::vector<Violation> violations;

  bool ok() const { return precheck_ok && violations.empty(); }
};

/// The main construction: verifies convexity and complete reducibility, then
/// splits |A| into a thick building and k joined 0-spheres, with every step
/// machine-checked (failures land in `violations`, never silently).
Decomposition decompose(const Subcomplex& a, Exec ex = Exec::parallel);

}  // namespace crsb

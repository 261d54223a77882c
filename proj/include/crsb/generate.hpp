#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crsb/convexity.hpp"
#include "crsb/subcomplex.hpp"

namespace crsb {

/// Deterministic splitmix64; all sampling in the toolkit goes through this so
/// that a seed pins every generated object across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }

 private:
  uint64_t state_;
};

/// Chamber permutation induced by an invertible matrix over F_q acting on a
/// flag building (row vectors, right multiplication).
std::vector<int> flag_automorphism(const Building& b, const std::vector<std::vector<int>>& m);

/// Left multiplication by w on a thin building.
std::vector<int> thin_automorphism(const Building& b, int w);

/// Componentwise on a join.
std::vector<int> join_automorphism(const Building& b, const std::vector<int>& pa,
                                   const std::vector<int>& pb);

/// Random invertible d x d matrix over F_q.
std::vector<std::vector<int>> random_gl(int d, int q, Rng& rng);

/// Random type-preserving automorphism from the building's provenance;
/// nullopt when the provenance is unknown (raw JSON input).
std::optional<std::vector<int>> random_automorphism(const Building& b, Rng& rng);

struct GeneratedSubcomplex {
  Subcomplex a;
  std::string description;
};

/// Test-corpus generator: 3 of 4 draws take the convex hull of a uniformly
/// random simplex pair; 1 of 4 takes the fixed subcomplex of a random cyclic
/// group of type-preserving automorphisms (falling back to hulls when no
/// automorphism source exists). May return an empty subcomplex.
GeneratedSubcomplex random_convex_subcomplex(const BuildingPtr& b, Rng& rng);

}  // namespace crsb

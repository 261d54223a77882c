#pragma once

#include <vector>

#include "crsb/subcomplex.hpp"

namespace crsb {

/// Hull of a simplex pair inside one apartment: every simplex of the
/// apartment whose cell's relative interior meets the cone generated by the
/// two vertex-ray sets, mapped back to the building. Not face-closed as a
/// set; convex_hull closes. `carrier_choice` picks different carrier chambers
/// for the chart (used by the chart-independence property tests).
std::vector<int> pair_hull(const Building& b, int sa, int sb, int carrier_choice = 0);

/// Least fixpoint of pair_hull over all pairs, face-closed.
Subcomplex convex_hull(const BuildingPtr& b, const std::vector<int>& seed_ids);

struct ConvexityCertificate {
  bool convex = false;
  int witness_a = -1, witness_b = -1, missing = -1;
};

/// Pairwise hull containment; pre: face-closed (throws otherwise).
ConvexityCertificate is_convex(const Subcomplex& a, Exec ex = Exec::parallel);

}  // namespace crsb

#pragma once

#include <vector>

#include "crsb/linalg.hpp"

namespace crsb {

/// Exact feasibility of { A x = b, x >= 0 } by a phase-I simplex with Bland's rule.
bool feasible_nonneg(const Mat& a, const Vec& b);

enum class ConeSide { Interior, Boundary, Outside };

/// x in cone(gens) = { sum lambda_i g_i : lambda_i >= 0 }?
bool in_cone(const std::vector<Vec>& gens, const Vec& x);

/// Classifies the ray of x against cone(gens). Interior = relative interior
/// (a strictly positive combination of all generators hits the ray of x).
/// Throws on the zero vector.
ConeSide cone_side(const std::vector<Vec>& gens, const Vec& x);

/// relint(cone(cell_rays)) meets cone(gens)?  Requires cell_rays nonempty.
bool relint_meets_cone(const std::vector<Vec>& cell_rays, const std::vector<Vec>& gens);

/// relint(cone(cell_rays)) meets the linear subspace?
bool relint_meets_subspace(const std::vector<Vec>& cell_rays, const Subspace& sub);

}  // namespace crsb

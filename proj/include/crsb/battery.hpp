#pragma once

#include <string>
#include <vector>

#include "crsb/credu.hpp"
#include "crsb/generate.hpp"

namespace crsb {

/// Aggregate of one or many battery runs. Violations are falsified theory
/// invariants; on valid inputs the expected count is zero.
struct BatteryResult {
  int cases = 0;
  int convex_cases = 0;
  int cr_cases = 0;
  int skipped_empty = 0;
  std::vector<Violation> violations;

  void merge(const BatteryResult& o);
  bool ok() const { return violations.empty(); }
};

/// Structure lemmas on one generated convex subcomplex: convexity of the
/// generator output, purity, chamber connectivity, the span lemma per
/// apartment, and sphere containment for opposite top pairs.
BatteryResult battery_lemmas(const Subcomplex& a, Exec ex = Exec::parallel);

/// Serre criteria: the three complete-reducibility modes agree, and the
/// geodesic-extension construction matches the brute-force opposition oracle.
BatteryResult battery_serre(const Subcomplex& a, Exec ex = Exec::parallel);

/// Levi-sphere machinery on a completely reducible subcomplex: common
/// spheres for all top pairs, wall structure, surgery, W_S wall stability,
/// t-class tiling, and isometry transport. No-op for m = 0 or non-cr inputs.
BatteryResult battery_section3(const Subcomplex& a, Exec ex = Exec::parallel);

/// Decomposition round trip (when convex and cr), collecting violations.
BatteryResult battery_decompose(const Subcomplex& a, Exec ex = Exec::parallel);

/// Everything above on one subcomplex.
BatteryResult battery_full(const Subcomplex& a, Exec ex = Exec::parallel);

/// Seeded corpus driver: `count` generated subcomplexes of the building.
BatteryResult run_fuzz(const BuildingPtr& b, int count, uint64_t seed,
                       Exec ex = Exec::parallel);

}  // namespace crsb

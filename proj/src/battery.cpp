#include "crsb/battery.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace crsb {

namespace {

constexpr int kMaxSurgeries = 12;
constexpr int kMaxIsometryPairs = 12;

std::string simplex_label(const Building& b, int sid) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < b.simplices[sid].verts.size(); ++i) {
    if (i) os << ",";
    os << b.simplices[sid].verts[i];
  }
  os << "]";
  return os.str();
}

void check_span_lemma(const Subcomplex& a, BatteryResult& r) {
  const Building& b = a.building();
  const SigmaComplex& sigma = *b.sigma;
  for (const Apartment& ap : all_apartments(b)) {
    auto chart = apartment_containing(b, ap.base_c, ap.base_e);
    std::vector<int> cells;
    for (int sid : a.ids()) {
      int cell = chart->pull_simplex(sid);
      if (cell >= 0) cells.push_back(cell);
    }
    if (cells.empty()) continue;
    int mm = -1;
    for (int cell : cells) mm = std::max(mm, sigma.cells[cell].dim);
    Subspace span;
    bool first = true;
    bool bad = false;
    for (int cell : cells) {
      if (sigma.cells[cell].dim != mm) continue;
      Subspace sp = Subspace::span(sigma.cells[cell].rays, b.sys->rank);
      if (first) {
        span = sp;
        first = false;
      } else if (!(span == sp)) {
        bad = true;
      }
    }
    for (int cell : cells)
      for (const Vec& ray : sigma.cells[cell].rays)
        if (!span.contains(ray)) bad = true;
    if (bad)
      r.violations.push_back(
          {"span-lemma", "apartment section of a convex subcomplex has mixed spans"});
  }
}

void check_opplem(const Subcomplex& a, BatteryResult& r) {
  const Building& b = a.building();
  int m = a.max_dim();
  auto tops = a.of_dim(m);
  for (size_t i = 0; i < tops.size(); ++i)
    for (size_t j = i + 1; j < tops.size(); ++j) {
      if (!are_opposite(b, tops[i], tops[j])) continue;
      try {
        levi_sphere(a, tops[i], tops[j]);
      } catch (const ViolationError& e) {
        r.violations.push_back(e.v);
      }
    }
}

// Tops of the sphere grouped by region tile exactly the t-classes.
void check_tiling(const Subcomplex& a, const LeviSphere& s, const std::vector<Wall>& walls,
                  const TClassPartition& tc, BatteryResult& r) {
  const Building& b = a.building();
  if (walls.empty()) {
    // One region: the whole sphere must be one t-class restricted to it.
    std::set<int> classes;
    for (int top : s.top) classes.insert(tc.class_of(top));
    if (classes.size() != 1)
      r.violations.push_back({"tiling-trivial", "wall-free sphere meets several t-classes"});
    return;
  }
  std::map<std::vector<int>, std::vector<int>> by_sign;
  for (int top : s.top) by_sign[sign_vector(s, walls, b.sys->gram, top)].push_back(top);
  for (auto& [sv, members] : by_sign) {
    std::set<int> classes;
    for (int top : members) classes.insert(tc.class_of(top));
    if (classes.size() != 1) {
      r.violations.push_back({"tiling-region-split", "one region meets several t-classes"});
      continue;
    }
    // The class restricted to the sphere covers the whole region.
    int cls = *classes.begin();
    std::vector<int> in_sphere;
    for (int x : tc.classes[cls])
      if (s.contains(x)) in_sphere.push_back(x);
    std::sort(in_sphere.begin(), in_sphere.end());
    std::vector<int> mem = members;
    std::sort(mem.begin(), mem.end());
    if (in_sphere != mem)
      r.violations.push_back({"tiling-region-gap", "t-class does not tile its region"});
    // Containment lemma: the whole class lies in the sphere.
    if (int(tc.classes[cls].size()) != int(in_sphere.size()))
      r.violations.push_back(
          {"t-class-not-in-sphere", "t-class leaves a Levi sphere containing it"});
  }
}

}  // namespace

void BatteryResult::merge(const BatteryResult& o) {
  cases += o.cases;
  convex_cases += o.convex_cases;
  cr_cases += o.cr_cases;
  skipped_empty += o.skipped_empty;
  violations.insert(violations.end(), o.violations.begin(), o.violations.end());
}

BatteryResult battery_lemmas(const Subcomplex& a, Exec ex) {
  BatteryResult r;
  r.cases = 1;
  if (a.empty()) {
    r.skipped_empty = 1;
    return r;
  }
  auto cert = is_convex(a, ex);
  if (!cert.convex) {
    r.violations.push_back({"generated-not-convex",
                            "generator output fails convexity, witness pair (" +
                                simplex_label(a.building(), cert.witness_a) + "," +
                                simplex_label(a.building(), cert.witness_b) + ")"});
    return r;
  }
  r.convex_cases = 1;
  auto pur = purity_and_dimension(a);
  if (!pur.pure) {
    r.violations.push_back({"convex-not-pure", "lonely simplex " +
                                                   simplex_label(a.building(), pur.witness)});
    return r;
  }
  if (pur.dim >= 1) {
    auto g = chamber_graph(a);
    if (!g.connected)
      r.violations.push_back({"chamber-graph-disconnected", "convex subcomplex splits"});
  }
  check_span_lemma(a, r);
  check_opplem(a, r);
  return r;
}

BatteryResult battery_serre(const Subcomplex& a, Exec ex) {
  BatteryResult r;
  r.cases = 1;
  if (a.empty()) {
    r.skipped_empty = 1;
    return r;
  }
  auto all = complete_reducibility(a, CrMode::All, ex);
  auto verts = complete_reducibility(a, CrMode::Vertices, ex);
  auto pair = complete_reducibility(a, CrMode::OnePair, ex);
  if (all.completely_reducible != verts.completely_reducible ||
      all.completely_reducible != pair.completely_reducible) {
    r.violations.push_back(
        {"serre-mode-disagreement",
         std::string("ALL=") + (all.completely_reducible ? "1" : "0") +
             " VERTICES=" + (verts.completely_reducible ? "1" : "0") +
             " ONE_PAIR=" + (pair.completely_reducible ? "1" : "0")});
    return r;
  }
  if (!all.completely_reducible) return r;
  r.cr_cases = 1;
  // Extension construction against the brute-force oracle, on every top.
  int m = a.max_dim();
  if (m >= 1 && pair.pair.first >= 0) {
    LeviSphere base;
    try {
      base = levi_sphere(a, pair.pair.first, pair.pair.second);
    } catch (const ViolationError& e) {
      r.violations.push_back(e.v);
      return r;
    }
    for (int c : a.of_dim(m)) {
      std::vector<int> oracle = opposites_in(a, c, ex);
      if (oracle.empty()) {
        r.violations.push_back({"all-or-nothing", "cr subcomplex with an opposite-free top"});
        continue;
      }
      try {
        int built = extend_to_opposite(a, c, base);
        if (!std::binary_search(oracle.begin(), oracle.end(), built))
          r.violations.push_back(
              {"extension-oracle-mismatch",
               "constructed opposite not in the brute-force list for " +
                   simplex_label(a.building(), c)});
      } catch (const ViolationError& e) {
        r.violations.push_back(e.v);
      }
    }
  }
  return r;
}

BatteryResult battery_section3(const Subcomplex& a, Exec ex) {
  BatteryResult r;
  r.cases = 1;
  if (a.empty()) {
    r.skipped_empty = 1;
    return r;
  }
  auto cr = complete_reducibility(a, CrMode::OnePair, ex);
  if (!cr.completely_reducible) return r;
  r.cr_cases = 1;
  int m = a.max_dim();
  if (m < 1) return r;
  auto tops = a.of_dim(m);
  TClassPartition tc = t_classes(a);

  // Common Levi spheres for all top pairs; collect distinct spheres.
  std::vector<LeviSphere> spheres;
  auto note_sphere = [&](LeviSphere s) {
    for (const auto& t : spheres)
      if (t.simplices == s.simplices) return;
    spheres.push_back(std::move(s));
  };
  for (size_t i = 0; i < tops.size(); ++i)
    for (size_t j = i; j < tops.size(); ++j) {
      try {
        LeviSphere s = common_levi_sphere(a, tops[i], tops[j]);
        if (!s.contains(tops[i]) || !s.contains(tops[j]))
          r.violations.push_back({"common-levi-miss", "returned sphere misses an input"});
        note_sphere(std::move(s));
      } catch (const ViolationError& e) {
        r.violations.push_back(e.v);
      }
    }

  // Wall structure, reflection data, tiling per collected sphere.
  std::vector<std::vector<Wall>> sphere_walls(spheres.size());
  std::vector<Subspace> sphere_s0(spheres.size());
  for (size_t i = 0; i < spheres.size(); ++i) {
    try {
      ReflectionData rd = reflection_data(a, spheres[i]);  // includes wall checks
      sphere_walls[i] = rd.walls;
      sphere_s0[i] = rd.s0;
      check_tiling(a, spheres[i], rd.walls, tc, r);
    } catch (const ViolationError& e) {
      r.violations.push_back(e.v);
    }
  }

  // Surgery across shared walls.
  int surgeries = 0;
  for (size_t i = 0; i < spheres.size() && surgeries < kMaxSurgeries; ++i)
    for (size_t j = 0; j < spheres.size() && surgeries < kMaxSurgeries; ++j) {
      if (i == j) continue;
      for (const Wall& w : sphere_walls[i]) {
        bool shared = false;
        for (const Wall& w2 : sphere_walls[j])
          if (w2.panels == w.panels) shared = true;
        if (!shared) continue;
        for (int side2 : {-1, 1}) {
          try {
            LeviSphere glued = surgery(a, spheres[i], w, 1, spheres[j], side2);
            if (glued.span.dim() != m + 1)
              r.violations.push_back({"surgery-dim", "glued sphere has wrong span dimension"});
          } catch (const ViolationError& e) {
            r.violations.push_back(e.v);
          } catch (const std::invalid_argument&) {
            // Degenerate selector: both hemispheres coincide.
          }
        }
        if (++surgeries >= kMaxSurgeries) break;
      }
    }

  // Isometries between intersecting spheres.
  int pairs = 0;
  for (size_t i = 0; i < spheres.size() && pairs < kMaxIsometryPairs; ++i)
    for (size_t j = i + 1; j < spheres.size() && pairs < kMaxIsometryPairs; ++j) {
      std::vector<int> shared;
      std::set_intersection(spheres[i].simplices.begin(), spheres[i].simplices.end(),
                            spheres[j].simplices.begin(), spheres[j].simplices.end(),
                            std::back_inserter(shared));
      if (shared.empty()) continue;
      ++pairs;
      try {
        Mat phi = levi_isometry(a, spheres[i], spheres[j]);  // verifies pointwise fixing
        // Wall sets conjugate.
        std::vector<Subspace> imgs;
        for (const Wall& w : sphere_walls[i]) imgs.push_back(w.sub.apply(phi));
        if (imgs.size() != sphere_walls[j].size()) {
          r.violations.push_back({"isometry-wall-count", "wall counts differ across isometry"});
        } else {
          for (const Subspace& img : imgs) {
            bool found = false;
            for (const Wall& w2 : sphere_walls[j])
              if (w2.sub == img) found = true;
            if (!found)
              r.violations.push_back(
                  {"isometry-wall-mismatch", "isometry image of a wall is not a wall"});
          }
        }
        // Trivial factors agree: phi(S_0) = S_0'.
        if (!(sphere_s0[i].apply(phi) == sphere_s0[j]))
          r.violations.push_back({"isometry-s0", "trivial factor not preserved"});
      } catch (const ViolationError& e) {
        r.violations.push_back(e.v);
      }
    }
  return r;
}

BatteryResult battery_decompose(const Subcomplex& a, Exec ex) {
  BatteryResult r;
  r.cases = 1;
  if (a.empty()) {
    r.skipped_empty = 1;
    return r;
  }
  Decomposition d = decompose(a, ex);
  for (const auto& v : d.violations) r.violations.push_back(v);
  if (d.precheck_ok) {
    r.cr_cases = 1;
    // Chamber count bookkeeping: t-classes = chambers of Z when Z is present.
    if (d.z_present && d.z && int(d.z_classes.size()) != d.z->n_chambers)
      r.violations.push_back({"z-chamber-count", "t-class count differs from Z chambers"});
  }
  return r;
}

BatteryResult battery_full(const Subcomplex& a, Exec ex) {
  BatteryResult r = battery_lemmas(a, ex);
  BatteryResult s = battery_serre(a, ex);
  BatteryResult t = battery_section3(a, ex);
  BatteryResult d = battery_decompose(a, ex);
  // One logical case.
  r.violations.insert(r.violations.end(), s.violations.begin(), s.violations.end());
  r.violations.insert(r.violations.end(), t.violations.begin(), t.violations.end());
  r.violations.insert(r.violations.end(), d.violations.begin(), d.violations.end());
  r.cr_cases = std::max(r.cr_cases, s.cr_cases);
  return r;
}

BatteryResult run_fuzz(const BuildingPtr& b, int count, uint64_t seed, Exec ex) {
  BatteryResult total;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    GeneratedSubcomplex g = random_convex_subcomplex(b, rng);
    BatteryResult r = battery_full(g.a, ex);
    for (auto& v : r.violations) v.detail += " (case " + std::to_string(i) + ": " + g.description + ")";
    total.merge(r);
  }
  return total;
}

}  // namespace crsb

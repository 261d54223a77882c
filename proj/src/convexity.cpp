#include "crsb/convexity.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "crsb/lp.hpp"

namespace crsb {

namespace {

std::vector<Vec> pair_cone_gens(const SigmaComplex& sigma, int cell_a, int cell_b) {
  std::set<int> verts;
  for (int v : sigma.cells[cell_a].verts) verts.insert(v);
  for (int v : sigma.cells[cell_b].verts) verts.insert(v);
  std::vector<Vec> gens;
  gens.reserve(verts.size());
  for (int v : verts) gens.push_back(sigma.vertices[v].ray);
  return gens;
}

}  // namespace

std::vector<int> pair_hull(const Building& b, int sa, int sb, int carrier_choice) {
  const auto& ca = b.simplices[sa].carriers;
  const auto& cb = b.simplices[sb].carriers;
  int chamber_a = ca[size_t(carrier_choice) % ca.size()];
  int chamber_b = cb[size_t(carrier_choice) % cb.size()];
  auto chart = apartment_containing(b, chamber_a, chamber_b);
  int cell_a = chart->pull_simplex(sa);
  int cell_b = chart->pull_simplex(sb);
  if (cell_a < 0 || cell_b < 0) throw arithmetic_error("pair_hull: simplex missing from chart");

  const SigmaComplex& sigma = *b.sigma;
  std::vector<Vec> gens = pair_cone_gens(sigma, cell_a, cell_b);
  std::vector<int> out;
  for (int cell = 0; cell < int(sigma.cells.size()); ++cell) {
    if (relint_meets_cone(sigma.cells[cell].rays, gens)) out.push_back(chart->push_cell(cell));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subcomplex convex_hull(const BuildingPtr& b, const std::vector<int>& seed_ids) {
  if (seed_ids.empty()) throw std::invalid_argument("convex_hull: empty seed set");
  Subcomplex a(b, seed_ids, /*close_faces=*/true);
  // Deterministic fixpoint: pairs processed in canonical order; new members
  // re-enqueue pairs against everything present.
  std::set<std::pair<int, int>> pending;
  auto enqueue_against_all = [&](int sid) {
    for (int other : a.ids()) pending.insert({std::min(sid, other), std::max(sid, other)});
  };
  for (int sid : a.ids()) enqueue_against_all(sid);
  while (!pending.empty()) {
    auto [x, y] = *pending.begin();
    pending.erase(pending.begin());
    for (int sid : pair_hull(*b, x, y)) {
      if (a.contains(sid)) continue;
      for (int f : b->faces_of(sid)) {
        if (a.contains(f)) continue;
        a.add(f);
        enqueue_against_all(f);
      }
    }
  }
  return a;
}

ConvexityCertificate is_convex(const Subcomplex& a, Exec ex) {
  if (!a.is_face_closed()) throw std::invalid_argument("is_convex: subcomplex not face-closed");
  const Building& b = a.building();
  const auto& ids = a.ids();
  long long k = ids.size();
  long long npairs = k * (k + 1) / 2;
  // Pair index -> (i <= j), row-major over the upper triangle.
  auto unrank = [&](long long p) {
    long long i = 0, acc = 0;
    while (acc + (k - i) <= p) {
      acc += k - i;
      ++i;
    }
    long long j = i + (p - acc);
    return std::make_pair(int(i), int(j));
  };
  ConvexityCertificate cert;
  cert.convex = true;
  long long bad = par_find_first(ex, npairs, [&](long long p) {
    auto [i, j] = unrank(p);
    for (int sid : pair_hull(b, ids[i], ids[j]))
      if (!a.contains(sid)) return true;
    return false;
  });
  if (bad >= 0) {
    auto [i, j] = unrank(bad);
    cert.convex = false;
    cert.witness_a = ids[i];
    cert.witness_b = ids[j];
    for (int sid : pair_hull(b, ids[i], ids[j]))
      if (!a.contains(sid)) {
        cert.missing = sid;
        break;
      }
  }
  return cert;
}

}  // namespace crsb

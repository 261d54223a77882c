#include "crsb/credu.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "crsb/lp.hpp"
#include "crsb/union_find.hpp"

namespace crsb {

namespace {

Vec cell_bary(const SigmaComplex& sigma, int cell) {
  Vec v(sigma.sys->rank);
  for (const Vec& r : sigma.cells[cell].rays) v = v + r;
  return v;
}

std::string simplex_label(const Building& b, int sid) {
  std::ostringstream os;
  os << "[";
  const auto& sx = b.simplices[sid];
  for (size_t i = 0; i < sx.verts.size(); ++i) {
    if (i) os << ",";
    os << "(" << b.vertices[sx.verts[i]].type << ":" << sx.verts[i] << ")";
  }
  os << "]";
  return os.str();
}

std::string mat_key(const Mat& m) {
  std::string k;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      k += m.at(i, j).str();
      k += ';';
    }
  return k;
}

// Completes the rays to an ambient basis by standard unit vectors and maps
// them to themselves; the restriction to span(rays) is rays -> targets.
Mat extend_to_ambient(const std::vector<Vec>& rays, const std::vector<Vec>& targets, int dim) {
  std::vector<Vec> dom = rays, img = targets;
  for (int j = 0; j < dim && int(dom.size()) < dim; ++j) {
    Vec e(dim);
    e[j] = 1;
    auto trial = dom;
    trial.push_back(e);
    if (Subspace::span(trial, dim).dim() == int(trial.size())) {
      dom.push_back(e);
      img.push_back(e);
    }
  }
  Mat d = Mat::from_cols(dom);
  auto dinv = inverse(d);
  if (!dinv) throw arithmetic_error("levi isometry: degenerate basis");
  return Mat::from_cols(img).mul(*dinv);
}

}  // namespace

bool LeviSphere::contains(int sid) const {
  return std::binary_search(simplices.begin(), simplices.end(), sid);
}

std::vector<int> opposites_in(const Subcomplex& a, int sid, Exec ex) {
  if (!a.contains(sid)) throw std::invalid_argument("opposites_in: simplex not in subcomplex");
  const Building& b = a.building();
  auto candidates = a.of_dim(b.simplices[sid].dim);
  std::vector<char> flag(candidates.size(), 0);
  par_for(ex, int(candidates.size()),
          [&](long long i) { flag[i] = are_opposite(b, sid, candidates[i]); });
  std::vector<int> out;
  for (size_t i = 0; i < candidates.size(); ++i)
    if (flag[i]) out.push_back(candidates[i]);
  return out;
}

CrCertificate complete_reducibility(const Subcomplex& a, CrMode mode, Exec ex) {
  if (a.empty()) throw std::invalid_argument("complete_reducibility: empty subcomplex");
  const Building& b = a.building();
  CrCertificate cert;
  cert.mode = mode;
  if (mode == CrMode::OnePair) {
    int m = a.max_dim();
    auto tops = a.of_dim(m);
    long long n = tops.size();
    long long found = par_find_first(ex, n * n, [&](long long p) {
      int i = int(p / n), j = int(p % n);
      return i != j && are_opposite(b, tops[i], tops[j]);
    });
    cert.completely_reducible = found >= 0;
    if (found >= 0) cert.pair = {tops[int(found / n)], tops[int(found % n)]};
    if (found < 0 && !tops.empty()) cert.witness = tops[0];
    return cert;
  }
  std::vector<int> scan = mode == CrMode::Vertices ? a.of_dim(0) : a.ids();
  long long bad = par_find_first(ex, int(scan.size()), [&](long long i) {
    return opposites_in(a, scan[i], Exec::serial).empty();
  });
  cert.completely_reducible = bad < 0;
  if (bad >= 0) cert.witness = scan[bad];
  return cert;
}

LeviSphere levi_sphere(const Subcomplex& a, int sa, int sb) {
  const Building& b = a.building();
  if (!a.contains(sa) || !a.contains(sb))
    throw std::invalid_argument("levi_sphere: simplices not in subcomplex");
  const auto& xa = b.simplices[sa];
  const auto& xb = b.simplices[sb];
  if (xa.dim != xb.dim) throw std::invalid_argument("levi_sphere: dimension mismatch");
  LeviSphere s;
  s.a = sa;
  s.b = sb;
  s.m = xa.dim;
  s.chart = apartment_containing(b, xa.carriers.front(), xb.carriers.front());
  int ca = s.chart->pull_simplex(sa);
  int cb = s.chart->pull_simplex(sb);
  const SigmaComplex& sigma = *b.sigma;
  if (sigma.thin_opposite(ca) != cb)
    throw std::invalid_argument("levi_sphere: simplices are not opposite");
  s.span = Subspace::span(sigma.cells[ca].rays, b.sys->rank);
  for (int cell = 0; cell < int(sigma.cells.size()); ++cell) {
    bool inside = true;
    for (const Vec& r : sigma.cells[cell].rays)
      if (!s.span.contains(r)) {
        inside = false;
        break;
      }
    if (inside) {
      int sid = s.chart->push_cell(cell);
      if (!a.contains(sid))
        throw ViolationError("levi-sphere-escapes",
                             "sphere through " + simplex_label(b, sa) + " and " +
                                 simplex_label(b, sb) + " contains " + simplex_label(b, sid) +
                                 " which is outside the subcomplex");
      s.simplices.push_back(sid);
      if (sigma.cells[cell].dim == s.m) s.top.push_back(sid);
    } else if (relint_meets_subspace(sigma.cells[cell].rays, s.span)) {
      throw ViolationError("levi-sphere-flat",
                           "cell interior crosses the span without lying in it");
    }
  }
  std::sort(s.simplices.begin(), s.simplices.end());
  std::sort(s.top.begin(), s.top.end());
  if (s.span.dim() != s.m + 1)
    throw ViolationError("levi-sphere-dim", "span dimension is not m+1");
  return s;
}

int extend_to_opposite(const Subcomplex& a, int c, const LeviSphere& s) {
  const Building& b = a.building();
  if (!a.contains(c)) throw std::invalid_argument("extend_to_opposite: simplex not in A");
  if (c == s.a) return s.b;
  if (are_opposite(b, c, s.a)) return s.a;
  const SigmaComplex& sigma = *b.sigma;
  const auto& carriers_c = b.simplices[c].carriers;
  const auto& carriers_a = b.simplices[s.a].carriers;
  std::set<int> results;
  for (const Apartment& ap : all_apartments(b)) {
    auto has = [&](const std::vector<int>& carriers) {
      for (int ch : carriers)
        if (std::binary_search(ap.chambers.begin(), ap.chambers.end(), ch)) return true;
      return false;
    };
    if (!has(carriers_c) || !has(carriers_a)) continue;
    auto chart = apartment_containing(b, ap.base_c, ap.base_e);
    int cc = chart->pull_simplex(c);
    int ca = chart->pull_simplex(s.a);
    if (cc < 0 || ca < 0) continue;
    int ce = sigma.thin_opposite(cc);
    // Extension arc from the barycenter of a to the antipode of c's
    // barycenter; it must run inside the sphere.
    std::vector<Vec> arc{cell_bary(sigma, ca), cell_bary(sigma, ce)};
    bool inside = true;
    for (int cell = 0; cell < int(sigma.cells.size()) && inside; ++cell) {
      if (!relint_meets_cone(sigma.cells[cell].rays, arc)) continue;
      if (!s.contains(chart->push_cell(cell))) inside = false;
    }
    if (inside) results.insert(chart->push_cell(ce));
  }
  if (results.empty())
    throw ViolationError("extension-missing",
                         "no apartment carries the geodesic extension of " +
                             simplex_label(b, c) + " through " + simplex_label(b, s.a) +
                             " inside the Levi sphere");
  if (results.size() > 1)
    throw ViolationError("extension-ambiguous", "geodesic extension in the sphere not unique");
  int result = *results.begin();
  if (!are_opposite(b, c, result))
    throw ViolationError("extension-not-opposite", "extension endpoint carrier not opposite");
  return result;
}

LeviSphere common_levi_sphere(const Subcomplex& a, int sa, int sb) {
  const Building& b = a.building();
  if (sa == sb) {
    auto ops = opposites_in(a, sa);
    if (ops.empty()) throw ViolationError("no-opposite", simplex_label(b, sa));
    return levi_sphere(a, sa, ops.front());
  }
  if (are_opposite(b, sa, sb)) return levi_sphere(a, sa, sb);
  auto ops_b = opposites_in(a, sb);
  if (ops_b.empty()) throw ViolationError("no-opposite", simplex_label(b, sb));
  LeviSphere s1 = levi_sphere(a, sb, ops_b.front());
  int d = extend_to_opposite(a, sa, s1);
  LeviSphere out = levi_sphere(a, sa, d);
  if (!out.contains(sb))
    throw ViolationError("common-levi-miss", "constructed sphere misses " + simplex_label(b, sb));
  return out;
}

std::vector<int> singular_panels(const Subcomplex& a) {
  const Building& b = a.building();
  int m = a.max_dim();
  if (m < 1) return {};
  std::map<int, int> count;
  for (int top : a.of_dim(m))
    for (int p : b.facets_of(top)) ++count[p];
  std::vector<int> out;
  for (auto [p, n] : count)
    if (n >= 3) out.push_back(p);
  return out;
}

std::vector<Wall> walls_in(const Subcomplex& a, const LeviSphere& s,
                           const std::vector<int>* singular_in) {
  const Building& b = a.building();
  const SigmaComplex& sigma = *b.sigma;
  std::vector<int> singular_local;
  if (!singular_in) singular_local = singular_panels(a);
  const std::vector<int>& singular = singular_in ? *singular_in : singular_local;
  std::vector<Wall> walls;
  for (int p : s.simplices) {
    if (b.simplices[p].dim != s.m - 1) continue;
    if (!std::binary_search(singular.begin(), singular.end(), p)) continue;
    int cell = s.chart->pull_simplex(p);
    Subspace sub = Subspace::span(sigma.cells[cell].rays, b.sys->rank);
    bool found = false;
    for (auto& w : walls)
      if (w.sub == sub) {
        w.panels.push_back(p);
        found = true;
        break;
      }
    if (!found) walls.push_back(Wall{sub, Vec{}, {p}});
  }
  std::sort(walls.begin(), walls.end(),
            [](const Wall& x, const Wall& y) { return x.sub.less(y.sub); });
  for (auto& w : walls) {
    std::sort(w.panels.begin(), w.panels.end());
    Subspace normal_line = orth_complement_within(w.sub, s.span, b.sys->gram);
    if (normal_line.dim() != 1)
      throw ViolationError("wall-codim", "wall is not codimension 1 in the sphere span");
    w.normal = normal_line.basis_row(0);
    // The great sphere is a union of singular panels.
    for (int cell = 0; cell < int(sigma.cells.size()); ++cell) {
      if (sigma.cells[cell].dim != s.m - 1) continue;
      bool inside = true;
      for (const Vec& r : sigma.cells[cell].rays)
        if (!w.sub.contains(r)) {
          inside = false;
          break;
        }
      if (!inside) continue;
      int sid = s.chart->push_cell(cell);
      if (!s.contains(sid))
        throw ViolationError("wall-escapes", "wall cell outside the sphere");
      if (!std::binary_search(singular.begin(), singular.end(), sid))
        throw ViolationError("wall-nonsingular-panel",
                             "wall carries non-singular panel " + simplex_label(b, sid));
    }
  }
  return walls;
}

std::vector<int> sign_vector(const LeviSphere& s, const std::vector<Wall>& walls,
                             const Mat& gram, int top_simplex) {
  int cell = s.chart->pull_simplex(top_simplex);
  Vec bary = cell_bary(*s.chart->b->sigma, cell);
  std::vector<int> sv;
  sv.reserve(walls.size());
  for (const Wall& w : walls) {
    int sg = inner(gram, bary, w.normal).sign();
    if (sg == 0)
      throw ViolationError("top-on-wall", "top simplex barycenter lies on a wall");
    sv.push_back(sg);
  }
  return sv;
}

std::vector<int> hemisphere(const LeviSphere& s, const Wall& wall, int side, const Mat& gram) {
  const Building& b = *s.chart->b;
  std::set<int> out;
  for (int top : s.top) {
    int cell = s.chart->pull_simplex(top);
    int sg = inner(gram, cell_bary(*b.sigma, cell), wall.normal).sign();
    if (sg == 0) throw ViolationError("top-on-wall", "top simplex on its own wall");
    if (sg != side) continue;
    for (int f : b.faces_of(top)) out.insert(f);
  }
  return {out.begin(), out.end()};
}

LeviSphere surgery(const Subcomplex& a, const LeviSphere& s, const Wall& wall, int side,
                   const LeviSphere& s2, int side2) {
  const Building& b = a.building();
  for (int p : wall.panels)
    if (!s.contains(p)) throw std::invalid_argument("surgery: H is not a wall of S");
  auto walls2 = walls_in(a, s2);
  const Wall* match = nullptr;
  for (const auto& w : walls2)
    if (w.panels == wall.panels) {
      match = &w;
      break;
    }
  if (!match) throw std::invalid_argument("surgery: replacement hemisphere boundary is not H");
  auto zh = hemisphere(s, wall, side, b.sys->gram);
  auto y = hemisphere(s2, *match, side2, b.sys->gram);
  if (zh == y)
    throw std::invalid_argument("surgery: replacement hemisphere equals the kept hemisphere");
  std::vector<int> glued;
  std::set_union(zh.begin(), zh.end(), y.begin(), y.end(), std::back_inserter(glued));
  // Validate by exhibiting the union as a Levi sphere on an opposite pair.
  std::vector<int> tops;
  for (int sid : glued)
    if (b.simplices[sid].dim == s.m) tops.push_back(sid);
  for (int x : tops)
    for (int yy : tops) {
      if (x == yy || !are_opposite(b, x, yy)) continue;
      LeviSphere cand = levi_sphere(a, x, yy);
      if (cand.simplices == glued) return cand;
    }
  throw ViolationError("surgery-not-levi", "glued hemispheres are not a Levi sphere");
}

ReflectionData reflection_data(const Subcomplex& a, const LeviSphere& s) {
  const Building& b = a.building();
  const Mat& gram = b.sys->gram;
  int dim = b.sys->rank;
  ReflectionData rd;
  rd.walls = walls_in(a, s);
  if (rd.walls.empty()) {
    rd.group = {Mat::identity(dim)};
    rd.group_words = {{}};
    rd.s0 = s.span;
    rd.splus = Subspace::zero(dim);
    rd.base_class = s.top;
    rd.ws_matrix.rank = 0;
    return rd;
  }

  // Sign classes of the tops; the base region belongs to the least top.
  std::map<int, std::vector<int>> sv_of;
  for (int top : s.top) sv_of[top] = sign_vector(s, rd.walls, gram, top);
  rd.base_sign = sv_of[s.top.front()];
  for (int top : s.top)
    if (sv_of[top] == rd.base_sign) rd.base_class.push_back(top);

  // Tops of the sphere through each panel (the sphere is thin).
  std::map<int, std::vector<int>> panel_tops;
  for (int top : s.top)
    for (int f : b.facets_of(top))
      if (s.contains(f)) panel_tops[f].push_back(top);
  for (auto& [p, tops] : panel_tops)
    if (tops.size() != 2)
      throw ViolationError("sphere-not-thin", "panel of the sphere not in exactly 2 tops");

  // Facet walls of the base region = spans of its sign-changing panels.
  std::set<int> simple_set;
  for (int top : rd.base_class)
    for (int f : b.facets_of(top)) {
      if (!s.contains(f)) continue;
      const auto& tops = panel_tops[f];
      int other = tops[0] == top ? tops[1] : tops[0];
      if (sv_of[other] == rd.base_sign) continue;
      int cell = s.chart->pull_simplex(f);
      Subspace sub = Subspace::span(b.sigma->cells[cell].rays, dim);
      int widx = -1;
      for (int i = 0; i < int(rd.walls.size()); ++i)
        if (rd.walls[i].sub == sub) widx = i;
      if (widx < 0)
        throw ViolationError("boundary-panel-not-wall",
                             "region boundary panel spans no wall: " + simplex_label(b, f));
      simple_set.insert(widx);
    }
  rd.simple_walls.assign(simple_set.begin(), simple_set.end());

  // Close the group over the simple reflections, words tracked.
  std::vector<Mat> gens;
  for (int wi : rd.simple_walls) gens.push_back(reflection_in_normal(rd.walls[wi].normal, gram));
  rd.group = {Mat::identity(dim)};
  rd.group_words = {{}};
  std::map<std::string, int> index{{mat_key(rd.group[0]), 0}};
  for (size_t head = 0; head < rd.group.size(); ++head) {
    for (int gi = 0; gi < int(gens.size()); ++gi) {
      Mat next = rd.group[head].mul(gens[gi]);
      auto key = mat_key(next);
      if (index.count(key)) continue;
      if (rd.group.size() >= 4096)
        throw ViolationError("ws-runaway", "reflection group closure exceeds bound");
      index.emplace(key, int(rd.group.size()));
      auto w = rd.group_words[head];
      w.push_back(gi);
      rd.group.push_back(std::move(next));
      rd.group_words.push_back(std::move(w));
    }
  }

  // Every wall reflection lies in the group generated by the simple ones.
  for (const Wall& w : rd.walls)
    if (!index.count(mat_key(reflection_in_normal(w.normal, gram))))
      throw ViolationError("walls-not-generated",
                           "wall reflection outside the simple-generated group");

  // The group permutes the wall set.
  for (const Mat& g : rd.group)
    for (const Wall& w : rd.walls) {
      Subspace img = w.sub.apply(g);
      bool found = false;
      for (const Wall& w2 : rd.walls)
        if (w2.sub == img) found = true;
      if (!found)
        throw ViolationError("wall-orbit-escape", "group element maps a wall off the wall set");
    }

  // Coxeter matrix of the simple system.
  int r = int(gens.size());
  rd.ws_matrix.rank = r;
  rd.ws_matrix.entries.assign(size_t(r) * r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Mat p = gens[i].mul(gens[j]);
      Mat acc = Mat::identity(dim);
      int order = 0;
      do {
        acc = acc.mul(p);
        ++order;
        if (order > 48) throw ViolationError("ws-order-runaway", "pairwise product order > 48");
      } while (!(acc == Mat::identity(dim)));
      rd.ws_matrix.at(i, j) = order;
    }

  rd.s0 = s.span;
  for (const Wall& w : rd.walls) rd.s0 = intersect(rd.s0, w.sub);
  rd.splus = orth_complement_within(rd.s0, s.span, gram);
  if (rd.splus.dim() != r)
    throw ViolationError("simple-system-rank-mismatch",
                         "simple wall count differs from dim S_plus");
  // Regions correspond to group elements.
  std::set<std::vector<int>> regions;
  for (int top : s.top) regions.insert(sv_of[top]);
  if (int(regions.size()) != int(rd.group.size()))
    throw ViolationError("region-count", "region count differs from |W_S|");
  return rd;
}

TClassPartition t_classes(const Subcomplex& a) {
  const Building& b = a.building();
  TClassPartition tc;
  int m = a.max_dim();
  tc.tops = a.of_dim(m);
  std::map<int, std::vector<int>> panel_tops;
  if (m >= 1)
    for (int i = 0; i < int(tc.tops.size()); ++i)
      for (int f : b.facets_of(tc.tops[i])) panel_tops[f].push_back(i);
  UnionFind uf(int(tc.tops.size()));
  for (auto& [p, tops] : panel_tops)
    if (tops.size() == 2) uf.unite(tops[0], tops[1]);
  std::map<int, int> root_to_class;
  tc.class_of_top.assign(tc.tops.size(), -1);
  for (int i = 0; i < int(tc.tops.size()); ++i) {
    int r = uf.find(i);
    auto it = root_to_class.find(r);
    int cls;
    if (it == root_to_class.end()) {
      cls = int(tc.classes.size());
      root_to_class.emplace(r, cls);
      tc.classes.emplace_back();
    } else {
      cls = it->second;
    }
    tc.class_of_top[i] = cls;
    tc.classes[cls].push_back(tc.tops[i]);
  }
  tc.boundary_panels.resize(tc.classes.size());
  tc.internal_panels.resize(tc.classes.size());
  for (auto& [p, tops] : panel_tops) {
    if (tops.size() == 2 && tc.class_of_top[tops[0]] == tc.class_of_top[tops[1]]) {
      tc.internal_panels[tc.class_of_top[tops[0]]].push_back(p);
    } else if (tops.size() >= 3) {
      std::set<int> classes;
      for (int t : tops) classes.insert(tc.class_of_top[t]);
      for (int cls : classes) tc.boundary_panels[cls].push_back(p);
    }
  }
  return tc;
}

int TClassPartition::class_of(int sid) const {
  auto it = std::lower_bound(tops.begin(), tops.end(), sid);
  if (it == tops.end() || *it != sid) return -1;
  return class_of_top[it - tops.begin()];
}

namespace {

// Direct isometry between spheres sharing the m-simplex x: maps x's vertex
// rays in s's chart to the same vertices' rays in s2's chart.
Mat direct_levi_isometry(const LeviSphere& s, const LeviSphere& s2, int x) {
  const Building& b = *s.chart->b;
  const SigmaComplex& sigma = *b.sigma;
  std::vector<Vec> dom, img;
  for (int v : b.simplices[x].verts) {
    dom.push_back(sigma.vertices[s.chart->vertex_pre.at(v)].ray);
    img.push_back(sigma.vertices[s2.chart->vertex_pre.at(v)].ray);
  }
  Mat m = extend_to_ambient(dom, img, b.sys->rank);
  // Gram preservation on the shared basis (chart independence of the metric).
  for (size_t i = 0; i < dom.size(); ++i)
    for (size_t j = 0; j < dom.size(); ++j)
      if (inner(b.sys->gram, dom[i], dom[j]) != inner(b.sys->gram, img[i], img[j]))
        throw ViolationError("isometry-not-orthogonal", "shared simplex Gram mismatch");
  return m;
}

std::vector<int> shared_simplices(const LeviSphere& s, const LeviSphere& s2) {
  std::vector<int> shared;
  std::set_intersection(s.simplices.begin(), s.simplices.end(), s2.simplices.begin(),
                        s2.simplices.end(), std::back_inserter(shared));
  return shared;
}

void verify_fixes_intersection(const LeviSphere& s, const LeviSphere& s2, const Mat& m) {
  const Building& b = *s.chart->b;
  const SigmaComplex& sigma = *b.sigma;
  for (int sid : shared_simplices(s, s2))
    for (int v : b.simplices[sid].verts) {
      const Vec& dom = sigma.vertices[s.chart->vertex_pre.at(v)].ray;
      const Vec& img = sigma.vertices[s2.chart->vertex_pre.at(v)].ray;
      if (m.apply(dom) != img)
        throw ViolationError("isometry-moves-intersection",
                             "vertex of the intersection not fixed");
    }
}

}  // namespace

Mat levi_isometry(const Subcomplex& a, const LeviSphere& s, const LeviSphere& s2) {
  auto shared = shared_simplices(s, s2);
  if (shared.empty()) throw std::invalid_argument("levi_isometry: spheres do not intersect");
  const Building& b = a.building();
  // Shared m-simplex: direct case.
  std::vector<int> shared_tops;
  std::set_intersection(s.top.begin(), s.top.end(), s2.top.begin(), s2.top.end(),
                        std::back_inserter(shared_tops));
  Mat m(0, 0);
  if (!shared_tops.empty()) {
    m = direct_levi_isometry(s, s2, shared_tops.front());
  } else {
    int sigma_shared = shared.front();
    auto find_top_containing = [&](const LeviSphere& sphere) {
      for (int top : sphere.top) {
        const auto& tv = b.simplices[top].verts;
        bool contains_all = true;
        for (int v : b.simplices[sigma_shared].verts)
          if (!std::binary_search(tv.begin(), tv.end(), v)) contains_all = false;
        if (contains_all) return top;
      }
      throw ViolationError("sphere-not-pure", "no top contains a sphere simplex");
    };
    int xa = find_top_containing(s);
    int xb = find_top_containing(s2);
    LeviSphere mid = common_levi_sphere(a, xa, xb);
    Mat m1 = direct_levi_isometry(s, mid, xa);
    Mat m2 = direct_levi_isometry(mid, s2, xb);
    m = m2.mul(m1);
  }
  verify_fixes_intersection(s, s2, m);
  return m;
}

namespace {

void record(std::vector<Violation>& out, const ViolationError& e) { out.push_back(e.v); }

}  // namespace

Decomposition decompose(const Subcomplex& a, Exec ex) {
  Decomposition d;
  if (a.empty()) throw std::invalid_argument("decompose: empty subcomplex");
  const Building& b = a.building();
  const BuildingPtr bp = a.building_ptr();
  d.convexity = is_convex(a, ex);
  if (!d.convexity.convex) return d;
  d.cr = complete_reducibility(a, CrMode::All, ex);
  if (!d.cr.completely_reducible) return d;
  d.precheck_ok = true;

  auto pur = purity_and_dimension(a);
  if (!pur.pure) {
    d.violations.push_back({"convex-not-pure", "convex subcomplex fails purity"});
    return d;
  }
  d.m = pur.dim;

  try {
    if (d.m == 0) {
      auto verts = a.ids();
      for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
          if (!are_opposite(b, verts[i], verts[j]))
            throw ViolationError("m0-not-pairwise-opposite",
                                 "0-dimensional cr subcomplex with a non-opposite pair");
      if (verts.size() == 2) {
        d.k = 1;
        d.z_matrix.rank = 0;
        d.z_wd_ok = true;
        d.z_thick = true;
      } else {
        d.k = 0;
        d.z_present = true;
        d.z = rank1_building(int(verts.size()));
        d.z_matrix = d.z->sys->matrix;
        for (int v : verts) d.z_classes.push_back({v});
        d.z_wd_ok = verify_wd_axioms(*d.z, ex).ok();
        d.z_thick = verts.size() >= 3;
        if (!d.z_wd_ok) throw ViolationError("z-wd", "rank-1 factor fails WD axioms");
      }
      return d;
    }

    TClassPartition tc = t_classes(a);
    d.z_classes = tc.classes;

    // Base sphere through the lexicographically least opposite top pair.
    int base_a = -1, base_b = -1;
    for (size_t i = 0; i < tc.tops.size() && base_a < 0; ++i)
      for (size_t j = 0; j < tc.tops.size(); ++j) {
        if (i == j) continue;
        if (are_opposite(b, tc.tops[i], tc.tops[j])) {
          base_a = tc.tops[i];
          base_b = tc.tops[j];
          break;
        }
      }
    if (base_a < 0) throw ViolationError("no-top-pair", "cr subcomplex without opposite tops");
    LeviSphere base = levi_sphere(a, base_a, base_b);
    ReflectionData rd = reflection_data(a, base);
    d.k = rd.s0.dim();

    if (rd.walls.empty()) {
      // Trivial W_S: |A| is a join of 0-spheres only; Z is empty.
      if (tc.classes.size() != 1)
        throw ViolationError("trivial-ws-multiclass",
                             "no walls but more than one t-class");
      d.z_matrix.rank = 0;
      d.z_wd_ok = true;
      d.z_thick = true;
      return d;
    }

    if (d.k + rd.splus.dim() != base.span.dim())
      throw ViolationError("split-dimension", "dim S_0 + dim S_plus != dim span");

    const Mat& gram = b.sys->gram;
    // Group composition table on indices.
    std::map<std::string, int> gindex;
    for (int g = 0; g < rd.order(); ++g) gindex.emplace(mat_key(rd.group[g]), g);
    auto gmul = [&](int x, int y) { return gindex.at(mat_key(rd.group[x].mul(rd.group[y]))); };
    std::vector<int> ginv(rd.order());
    for (int g = 0; g < rd.order(); ++g)
      for (int h = 0; h < rd.order(); ++h)
        if (gmul(g, h) == 0) ginv[g] = h;

    // Interior point of the base region; its orbit labels the regions of the
    // wall arrangement, transported frame by frame to other spheres.
    Vec p0(b.sys->rank);
    for (int top : rd.base_class) {
      int cell = base.chart->pull_simplex(top);
      p0 = p0 + cell_bary(*b.sigma, cell);
    }
    std::map<std::vector<int>, int> region_of_sign;
    for (int g = 0; g < rd.order(); ++g) {
      Vec p = rd.group[g].apply(p0);
      std::vector<int> sv;
      for (const Wall& w : rd.walls) {
        int sg = inner(gram, p, w.normal).sign();
        if (sg == 0) throw ViolationError("orbit-point-on-wall", "region label degenerate");
        sv.push_back(sg);
      }
      if (region_of_sign.count(sv))
        throw ViolationError("region-collision", "two group elements label one region");
      region_of_sign.emplace(std::move(sv), g);
    }

    auto singular = singular_panels(a);

    // Transports the base wall frame into a sphere sharing the top `via`
    // with `hop` (which in turn shares base.a with the base sphere).
    auto transported_frame = [&](const LeviSphere& target, const Mat& phi) {
      std::vector<Wall> frame = rd.walls;
      auto target_walls = walls_in(a, target, &singular);
      if (target_walls.size() != frame.size())
        throw ViolationError("transported-walls-mismatch", "wall counts differ");
      for (auto& w : frame) {
        w.sub = w.sub.apply(phi);
        w.normal = phi.apply(w.normal);
        bool found = false;
        for (const auto& tw : target_walls)
          if (tw.sub == w.sub) found = true;
        if (!found)
          throw ViolationError("transported-walls-mismatch",
                               "isometry image of a wall is not a wall of the target sphere");
        w.panels.clear();
      }
      return frame;
    };

    // Region coordinate of a whole t-class inside a coordinatized sphere.
    auto class_coordinate = [&](int cls, const LeviSphere& sphere,
                                const std::vector<Wall>& frame) {
      std::vector<int> sv_class;
      for (int x : tc.classes[cls]) {
        if (!sphere.contains(x))
          throw ViolationError("t-class-not-in-sphere",
                               "t-class member outside a Levi sphere containing the class: " +
                                   simplex_label(b, x));
        auto sv = sign_vector(sphere, frame, gram, x);
        if (sv_class.empty())
          sv_class = sv;
        else if (sv != sv_class)
          throw ViolationError("t-class-splits-regions", "t-class members in different regions");
      }
      auto it = region_of_sign.find(sv_class);
      if (it == region_of_sign.end())
        throw ViolationError("sv-not-a-region", "sign vector matches no W_S region");
      return it->second;
    };

    // The Weyl distance between two t-classes is read inside a common Levi
    // sphere; each pair's sphere is coordinatized through base.a, so every
    // transport is a composition of shared-simplex isometries.
    int nclasses = int(tc.classes.size());
    std::vector<int> least_member(nclasses);
    for (int cls = 0; cls < nclasses; ++cls) least_member[cls] = tc.classes[cls].front();
    std::vector<LeviSphere> hop(nclasses);  // sphere through base.a and the class
    std::vector<Mat> hop_phi(nclasses);     // base -> hop
    for (int cls = 0; cls < nclasses; ++cls) {
      hop[cls] = common_levi_sphere(a, base.a, least_member[cls]);
      hop_phi[cls] = direct_levi_isometry(base, hop[cls], base.a);
      verify_fixes_intersection(base, hop[cls], hop_phi[cls]);
    }

    // Abstract system for W_S.
    CoxeterSystemPtr zsys;
    try {
      zsys = build_system(rd.ws_matrix);
    } catch (const std::invalid_argument& e) {
      throw ViolationError("ws-matrix-invalid", e.what());
    }
    if (zsys->order != rd.order())
      throw ViolationError("ws-order-mismatch", "abstract and matrix group orders differ");
    auto zelem = [&](int g) {
      int r = 0;
      for (int gi : rd.group_words[g]) r = zsys->mul_gen(r, gi);
      return r;
    };

    // Transport routes differ by wall-preserving isometries, which shift the
    // region labels by a left translation; Weyl distances are therefore route
    // independent. A sample of pairs re-derives delta through the other
    // class's hop sphere to certify exactly that.
    int route_checks = 24;
    std::vector<int32_t> delta(size_t(nclasses) * nclasses, 0);
    for (int i = 0; i < nclasses; ++i)
      for (int j = i + 1; j < nclasses; ++j) {
        LeviSphere common = common_levi_sphere(a, least_member[i], least_member[j]);
        // Route base -> hop[i] -> common (hop[i] shares least_member[i]).
        Mat leg = direct_levi_isometry(hop[i], common, least_member[i]);
        verify_fixes_intersection(hop[i], common, leg);
        Mat phi = leg.mul(hop_phi[i]);
        auto frame = transported_frame(common, phi);
        int ci = class_coordinate(i, common, frame);
        int cj = class_coordinate(j, common, frame);
        if (ci == cj)
          throw ViolationError("classes-share-region",
                               "distinct t-classes in one region of a common sphere");
        int dz = zelem(gmul(ginv[ci], cj));
        if (route_checks > 0) {
          --route_checks;
          Mat leg2 = direct_levi_isometry(hop[j], common, least_member[j]);
          verify_fixes_intersection(hop[j], common, leg2);
          auto frame2 = transported_frame(common, leg2.mul(hop_phi[j]));
          int c2i = class_coordinate(i, common, frame2);
          int c2j = class_coordinate(j, common, frame2);
          if (zelem(gmul(ginv[c2i], c2j)) != dz)
            throw ViolationError("transport-route-dependent",
                                 "Weyl distance differs across transport routes");
        }
        delta[size_t(i) * nclasses + j] = dz;
        delta[size_t(j) * nclasses + i] = zelem(gmul(ginv[cj], ci));
      }
    try {
      d.z = make_building(zsys, nclasses, std::move(delta));
    } catch (const std::invalid_argument& e) {
      throw ViolationError("z-construction", e.what());
    }
    d.z_present = true;
    d.z_matrix = rd.ws_matrix;
    d.z_wd_ok = verify_wd_axioms(*d.z, ex).ok();
    if (!d.z_wd_ok) throw ViolationError("z-wd", "transported distance fails the WD axioms");
    d.z_thick = true;
    for (int c = 0; c < nclasses && d.z_thick; ++c)
      for (int s = 0; s < d.z->rank(); ++s)
        if (int(d.z->panel_of(c, s).size()) < 3) d.z_thick = false;
    if (!d.z_thick) throw ViolationError("z-not-thick", "decomposition factor has a thin panel");
  } catch (const ViolationError& e) {
    record(d.violations, e);
  }
  return d;
}

}  // namespace crsb

#include "crsb/building.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <stdexcept>

#include "crsb/union_find.hpp"

namespace crsb {

int Building::simplex_by_verts(const std::vector<int>& sorted_verts) const {
  auto it = simplex_index_.find(sorted_verts);
  return it == simplex_index_.end() ? -1 : it->second;
}

std::vector<int> Building::faces_of(int sid) const {
  const auto& v = simplices[sid].verts;
  int k = int(v.size());
  std::vector<int> out;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> sub;
    for (int i = 0; i < k; ++i)
      if ((mask >> i) & 1u) sub.push_back(v[i]);
    int f = simplex_by_verts(sub);
    assert(f >= 0);
    out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Building::facets_of(int sid) const {
  const auto& v = simplices[sid].verts;
  std::vector<int> out;
  if (v.size() < 2) return out;
  for (size_t drop = 0; drop < v.size(); ++drop) {
    std::vector<int> sub;
    for (size_t i = 0; i < v.size(); ++i)
      if (i != drop) sub.push_back(v[i]);
    int f = simplex_by_verts(sub);
    assert(f >= 0);
    out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Building::panel_of(int c, int s) const {
  std::vector<int> p = adj_[s][c];
  p.push_back(c);
  std::sort(p.begin(), p.end());
  return p;
}

BuildingPtr make_building(CoxeterSystemPtr sys, int n, std::vector<int32_t> delta,
                          std::string preset, std::shared_ptr<const Provenance> prov) {
  auto b = std::make_shared<Building>();
  b->sys = sys;
  b->sigma = std::make_shared<SigmaComplex>(coxeter_complex(sys));
  b->n_chambers = n;
  b->delta_ = std::move(delta);
  b->preset = std::move(preset);
  b->provenance = std::move(prov);
  assert(int64_t(b->delta_.size()) == int64_t(n) * n);

  int rank = sys->rank;
  b->adj_.assign(rank, std::vector<std::vector<int>>(n));
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      int w = b->delta(c, d);
      if (sys->lengths[w] == 1) {
        for (int s = 0; s < rank; ++s)
          if (sys->gen_elem(s) == w) b->adj_[s][c].push_back(d);
      }
    }
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < rank; ++s)
      if (b->adj_[s][c].empty())
        throw std::invalid_argument("chamber " + std::to_string(c) +
                                    " has no neighbor for generator " + std::to_string(s));

  // Vertices: cotype-{t} residues via union-find over the other adjacencies.
  b->chamber_vertex_.assign(n, std::vector<int>(rank, -1));
  for (int t = 0; t < rank; ++t) {
    UnionFind uf(n);
    for (int s = 0; s < rank; ++s) {
      if (s == t) continue;
      for (int c = 0; c < n; ++c)
        for (int d : b->adj_[s][c]) uf.unite(c, d);
    }
    std::map<int, int> root_to_vid;
    for (int c = 0; c < n; ++c) {
      int r = uf.find(c);
      auto it = root_to_vid.find(r);
      int vid;
      if (it == root_to_vid.end()) {
        vid = int(b->vertices.size());
        root_to_vid.emplace(r, vid);
        b->vertices.push_back({t, c});
      } else {
        vid = it->second;
      }
      b->chamber_vertex_[c][t] = vid;
    }
  }

  // Simplex census: all nonempty vertex subsets of chambers.
  b->chamber_simplex_.assign(n, -1);
  for (int c = 0; c < n; ++c) {
    const auto& cv = b->chamber_vertex_[c];
    for (unsigned mask = 1; mask < (1u << rank); ++mask) {
      std::vector<int> verts;
      TypeSet types = 0;
      for (int t = 0; t < rank; ++t)
        if ((mask >> t) & 1u) {
          verts.push_back(cv[t]);
          types |= 1u << t;
        }
      std::sort(verts.begin(), verts.end());
      auto it = b->simplex_index_.find(verts);
      int sid;
      if (it == b->simplex_index_.end()) {
        sid = int(b->simplices.size());
        b->simplex_index_.emplace(verts, sid);
        Building::Simplex sx;
        sx.verts = verts;
        sx.types = types;
        sx.dim = int(verts.size()) - 1;
        b->simplices.push_back(std::move(sx));
      } else {
        sid = it->second;
      }
      b->simplices[sid].carriers.push_back(c);
      if (mask == (1u << rank) - 1u) b->chamber_simplex_[c] = sid;
    }
  }
  for (auto& sx : b->simplices) {
    std::sort(sx.carriers.begin(), sx.carriers.end());
    sx.carriers.erase(std::unique(sx.carriers.begin(), sx.carriers.end()), sx.carriers.end());
  }
  return b;
}

BuildingPtr building_from_adjacency(CoxeterSystemPtr sys, int n,
                                    const std::vector<std::vector<std::vector<int>>>& panels,
                                    std::string preset) {
  int rank = sys->rank;
  std::vector<std::vector<std::vector<int>>> adj(rank, std::vector<std::vector<int>>(n));
  for (int s = 0; s < rank; ++s)
    for (const auto& panel : panels[s])
      for (int c : panel)
        for (int d : panel) {
          if (c == d) continue;
          if (c < 0 || c >= n || d < 0 || d >= n)
            throw std::invalid_argument("panel chamber id out of range");
          adj[s][c].push_back(d);
        }
  // Gallery BFS per base chamber, processed strictly by gallery distance.
  // In a genuine building, an unassigned s-neighbor found at level l gets
  // delta w*s when l(ws) = l+1, and stays at w otherwise (the shorter value
  // would have been assigned earlier). Corrupt inputs surface later in
  // verify_wd_axioms.
  std::vector<int32_t> delta(size_t(n) * n, -1);
  int max_len = sys->lengths[sys->longest];
  for (int c = 0; c < n; ++c) {
    std::vector<std::vector<int>> buckets(max_len + 1);
    delta[size_t(c) * n + c] = 0;
    buckets[0].push_back(c);
    int assigned = 1;
    for (int level = 0; level <= max_len; ++level) {
      for (size_t qi = 0; qi < buckets[level].size(); ++qi) {
        int x = buckets[level][qi];
        int w = delta[size_t(c) * n + x];
        for (int s = 0; s < rank; ++s) {
          int ws = sys->mul_gen(w, s);
          bool longer = sys->lengths[ws] == level + 1;
          for (int y : adj[s][x]) {
            if (delta[size_t(c) * n + y] >= 0) continue;
            int val = longer ? ws : w;
            delta[size_t(c) * n + y] = val;
            buckets[sys->lengths[val]].push_back(y);
            ++assigned;
          }
        }
      }
    }
    if (assigned != n) throw std::invalid_argument("chamber system is not gallery connected");
  }
  return make_building(sys, n, std::move(delta), std::move(preset));
}

BuildingPtr thin_building(CoxeterSystemPtr sys, std::string preset) {
  int n = sys->order;
  std::vector<int32_t> delta(size_t(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) delta[size_t(u) * n + v] = sys->mul(sys->inv(u), v);
  auto prov = std::make_shared<Provenance>();
  prov->kind = Provenance::Kind::Thin;
  return make_building(sys, n, std::move(delta), std::move(preset), prov);
}

namespace {

// Echelonized basis mod prime q, canonical form (reduced, lexicographically
// ordered rows, leading coefficient 1).
std::vector<std::vector<int>> echelon_mod(std::vector<std::vector<int>> rows, int q) {
  int m = int(rows.size());
  int d = rows.empty() ? 0 : int(rows[0].size());
  int r = 0;
  for (int c = 0; c < d && r < m; ++c) {
    int p = -1;
    for (int i = r; i < m; ++i)
      if (rows[i][c] % q != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[p], rows[r]);
    // scale to leading 1
    int lead = ((rows[r][c] % q) + q) % q;
    int inv = 1;
    for (int k = 1; k < q; ++k)
      if (k * lead % q == 1) inv = k;
    for (int j = 0; j < d; ++j) rows[r][j] = rows[r][j] * inv % q;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      int f = ((rows[i][c] % q) + q) % q;
      if (f == 0) continue;
      for (int j = 0; j < d; ++j) rows[i][j] = ((rows[i][j] - f * rows[r][j]) % q + q) % q;
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

// All k-dimensional subspaces of F_q^d as canonical echelon bases.
std::vector<std::vector<std::vector<int>>> subspaces_mod(int d, int q, int k) {
  // Enumerate by choosing k vectors; dedupe by canonical form. Desk scale.
  std::set<std::vector<std::vector<int>>> seen;
  long long total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  std::vector<int> vec(d);
  std::vector<std::vector<int>> nonzero;
  for (long long code = 1; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < d; ++i) {
      vec[i] = int(c % q);
      c /= q;
    }
    nonzero.push_back(vec);
  }
  std::vector<std::vector<int>> pick;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (int(pick.size()) == k) {
      auto e = echelon_mod(pick, q);
      if (int(e.size()) == k) seen.insert(e);
      return;
    }
    for (size_t i = start; i < nonzero.size(); ++i) {
      pick.push_back(nonzero[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return {seen.begin(), seen.end()};
}

bool subspace_contains(const std::vector<std::vector<int>>& small,
                       const std::vector<std::vector<int>>& big, int q) {
  // small subset of span(big): reduce each small row against big's echelon.
  for (auto row : small) {
    for (const auto& b : big) {
      int lead = -1;
      for (size_t j = 0; j < b.size(); ++j)
        if (b[j] != 0) {
          lead = int(j);
          break;
        }
      if (lead < 0) continue;
      int f = ((row[lead] % q) + q) % q;
      if (f == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) row[j] = ((row[j] - f * b[j]) % q + q) % q;
    }
    for (int x : row)
      if (x % q != 0) return false;
  }
  return true;
}

}  // namespace

BuildingPtr flag_building(int n, int q) {
  if (n < 1 || n > 3 || (q != 2 && q != 3))
    throw std::invalid_argument("flag_building: n must be in {1,2,3} and q in {2,3}");
  int d = n + 1;  // linear dimension
  auto prov = std::make_shared<Provenance>();
  prov->kind = Provenance::Kind::Flag;
  prov->proj_dim = n;
  prov->q = q;
  prov->subspaces.resize(n);
  prov->subspace_index.resize(n);
  for (int t = 0; t < n; ++t) {
    prov->subspaces[t] = subspaces_mod(d, q, t + 1);
    for (size_t i = 0; i < prov->subspaces[t].size(); ++i)
      prov->subspace_index[t][prov->subspaces[t][i]] = int(i);
  }
  // Complete flags.
  std::vector<std::vector<int>> flags;
  std::vector<int> cur(n);
  std::function<void(int)> rec = [&](int t) {
    if (t == n) {
      flags.push_back(cur);
      return;
    }
    for (size_t i = 0; i < prov->subspaces[t].size(); ++i) {
      if (t > 0 && !subspace_contains(prov->subspaces[t - 1][size_t(cur[t - 1])],
                                      prov->subspaces[t][i], q))
        continue;
      cur[t] = int(i);
      rec(t + 1);
    }
  };
  rec(0);
  std::sort(flags.begin(), flags.end());
  int nc = int(flags.size());
  prov->chamber_flag = flags;
  for (int c = 0; c < nc; ++c) prov->flag_index[flags[c]] = c;

  // s-adjacency: flags differing exactly at position s; delta by BFS.
  auto sys = build_system(coxeter_matrix_preset(n == 1 ? "A1" : (n == 2 ? "A2" : "A3")));
  std::vector<std::vector<std::vector<int>>> panels(n);
  for (int s = 0; s < n; ++s) {
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int c = 0; c < nc; ++c) {
      auto key = flags[c];
      key.erase(key.begin() + s);
      groups[key].push_back(c);
    }
    for (auto& [k, g] : groups) panels[s].push_back(g);
  }
  auto b = building_from_adjacency(sys, nc, panels,
                                   n == 2 && q == 2 ? "fano" : "pg" + std::to_string(n) +
                                                                   std::to_string(q));
  // building_from_adjacency loses provenance; rebuild with it.
  return make_building(sys, nc, std::vector<int32_t>(b->delta_table()), b->preset, prov);
}

BuildingPtr rank1_building(int n) {
  if (n < 2) throw std::invalid_argument("rank1_building needs at least 2 chambers");
  auto sys = build_system(coxeter_matrix_preset("A1"));
  std::vector<int32_t> delta(size_t(n) * n, 1);
  for (int c = 0; c < n; ++c) delta[size_t(c) * n + c] = 0;
  auto prov = std::make_shared<Provenance>();
  prov->kind = Provenance::Kind::Rank1;
  prov->rank1_count = n;
  return make_building(sys, n, std::move(delta), "rank1-" + std::to_string(n), prov);
}

BuildingPtr join_buildings(const BuildingPtr& a, const BuildingPtr& b) {
  auto sys = build_system(CoxeterMatrix::product(a->sys->matrix, b->sys->matrix));
  int ra = a->sys->rank;
  // Embeddings of the factor groups into the product.
  auto embed = [&](const CoxeterSystem& fs, int shift, int w) {
    int r = 0;
    for (uint8_t s : fs.words[w]) r = sys->mul_gen(r, s + shift);
    return r;
  };
  int na = a->n_chambers, nb = b->n_chambers;
  int n = na * nb;
  std::vector<int32_t> delta(size_t(n) * n);
  std::vector<int> ea(a->sys->order), eb(b->sys->order);
  for (int w = 0; w < a->sys->order; ++w) ea[w] = embed(*a->sys, 0, w);
  for (int w = 0; w < b->sys->order; ++w) eb[w] = embed(*b->sys, ra, w);
  for (int c1 = 0; c1 < na; ++c1)
    for (int c2 = 0; c2 < nb; ++c2)
      for (int d1 = 0; d1 < na; ++d1)
        for (int d2 = 0; d2 < nb; ++d2) {
          int c = c1 * nb + c2, d = d1 * nb + d2;
          delta[size_t(c) * n + d] = sys->mul(ea[a->delta(c1, d1)], eb[b->delta(c2, d2)]);
        }
  auto prov = std::make_shared<Provenance>();
  prov->kind = Provenance::Kind::Join;
  prov->join_left = a;
  prov->join_right = b;
  std::string preset;
  if (!a->preset.empty() && !b->preset.empty()) preset = a->preset + "*" + b->preset;
  return make_building(sys, n, std::move(delta), std::move(preset), prov);
}

WdReport verify_wd_axioms(const Building& b, Exec ex) {
  const auto& sys = *b.sys;
  int n = b.n_chambers;
  int rank = sys.rank;
  WdReport report;
  std::mutex mu;
  auto add = [&](WdViolation v) {
    std::lock_guard<std::mutex> lock(mu);
    report.violations.push_back(std::move(v));
  };

  // Panels partition into classes of size >= 2 (checked in make_building via
  // nonempty neighbor lists); here: delta(c,d) = 1 iff c = d, symmetry
  // delta(d,c) = delta(c,d)^{-1}, and the two-sided axioms.
  par_for(ex, n, [&](long long ci) {
    int c = int(ci);
    for (int d = 0; d < n; ++d) {
      int w = b.delta(c, d);
      if ((w == 0) != (c == d))
        add({"WD1", c, d, -1, -1, "delta = identity iff chambers equal fails"});
      if (b.delta(d, c) != sys.inv(w))
        add({"WD-sym", c, d, -1, -1, "delta(d,c) != delta(c,d)^{-1}"});
      for (int s = 0; s < rank; ++s) {
        int ws = sys.mul_gen(w, s);
        bool longer = sys.lengths[ws] == sys.lengths[w] + 1;
        // WD2: delta(d,d') = s implies delta(c,d') in {w, ws}, = ws if longer.
        for (int d2 : b.s_adjacent(d, s)) {
          int w2 = b.delta(c, d2);
          if (w2 != w && w2 != ws)
            add({"WD2", c, d, d2, s, "delta(c,d') not in {w, ws}"});
          else if (longer && w2 != ws)
            add({"WD2", c, d, d2, s, "l(ws) = l(w)+1 but delta(c,d') != ws"});
        }
        // WD3: if longer, some d' with delta(d,d') = s and delta(c,d') = ws.
        if (longer) {
          bool found = false;
          for (int d2 : b.s_adjacent(d, s))
            if (b.delta(c, d2) == ws) {
              found = true;
              break;
            }
          if (!found) add({"WD3", c, d, -1, s, "no extension chamber"});
        }
      }
    }
  });
  std::sort(report.violations.begin(), report.violations.end(),
            [](const WdViolation& x, const WdViolation& y) {
              return std::tie(x.c, x.d, x.e, x.s, x.rule) < std::tie(y.c, y.d, y.e, y.s, y.rule);
            });
  return report;
}

int ApartmentChart::push_cell(int sigma_cell) const {
  const auto& cell = b->sigma->cells[sigma_cell];
  std::vector<int> verts;
  verts.reserve(cell.verts.size());
  for (int v : cell.verts) verts.push_back(vertex_img[v]);
  std::sort(verts.begin(), verts.end());
  int sid = b->simplex_by_verts(verts);
  if (sid < 0) throw arithmetic_error("apartment image cell is not a building simplex");
  return sid;
}

int ApartmentChart::pull_simplex(int building_simplex) const {
  const auto& sx = b->simplices[building_simplex];
  std::vector<int> verts;
  verts.reserve(sx.verts.size());
  for (int v : sx.verts) {
    auto it = vertex_pre.find(v);
    if (it == vertex_pre.end()) return -1;
    verts.push_back(it->second);
  }
  std::sort(verts.begin(), verts.end());
  return b->sigma->cell_by_verts(verts);
}

std::vector<int> ApartmentChart::image_chambers_sorted() const {
  std::vector<int> img = chamber_img;
  std::sort(img.begin(), img.end());
  return img;
}

namespace {

ChartPtr build_chart(const Building& b, int c, int e) {
  const auto& sys = *b.sys;
  auto chart = std::make_shared<ApartmentChart>();
  chart->b = &b;
  chart->base_c = c;
  chart->base_e = e;
  chart->chamber_img.assign(sys.order, -1);
  int w0 = sys.longest;
  for (int x = 0; x < b.n_chambers; ++x) {
    int wx = b.delta(c, x);
    int xe = b.delta(x, e);
    if (sys.lengths[wx] + sys.lengths[xe] != sys.lengths[w0]) continue;
    if (sys.mul(wx, xe) != w0) continue;
    if (chart->chamber_img[wx] >= 0)
      throw arithmetic_error("apartment chart not injective (building invalid)");
    chart->chamber_img[wx] = x;
  }
  for (int w = 0; w < sys.order; ++w)
    if (chart->chamber_img[w] < 0)
      throw arithmetic_error("apartment chart incomplete (building invalid)");
  // Delta preservation.
  for (int u = 0; u < sys.order; ++u)
    for (int v = 0; v < sys.order; ++v)
      if (b.delta(chart->chamber_img[u], chart->chamber_img[v]) != sys.mul(sys.inv(u), v))
        throw arithmetic_error("apartment chart does not preserve delta");
  for (int w = 0; w < sys.order; ++w) chart->chamber_pre[chart->chamber_img[w]] = w;

  // Vertex map, with consistency across chambers.
  chart->vertex_img.assign(b.sigma->vertices.size(), -1);
  for (int w = 0; w < sys.order; ++w) {
    int ch = chart->chamber_img[w];
    for (int s = 0; s < sys.rank; ++s) {
      int sv = b.sigma->chamber_vertex(w, s);
      int bv = b.chamber_vertex(ch, s);
      if (chart->vertex_img[sv] >= 0 && chart->vertex_img[sv] != bv)
        throw arithmetic_error("apartment chart vertex map inconsistent");
      chart->vertex_img[sv] = bv;
    }
  }
  for (size_t sv = 0; sv < chart->vertex_img.size(); ++sv)
    chart->vertex_pre[chart->vertex_img[sv]] = int(sv);
  return chart;
}

}  // namespace

ChartPtr apartment_containing(const Building& b, int c, int d) {
  const auto& sys = *b.sys;
  // Extend d to a chamber opposite c along increasing galleries.
  int e = d;
  int w = b.delta(c, d);
  while (w != sys.longest) {
    int s = -1;
    for (int t = 0; t < sys.rank; ++t)
      if (sys.lengths[sys.mul_gen(w, t)] > sys.lengths[w]) {
        s = t;
        break;
      }
    assert(s >= 0);
    int ws = sys.mul_gen(w, s);
    int next = -1;
    for (int y : b.s_adjacent(e, s))
      if (b.delta(c, y) == ws && (next < 0 || y < next)) next = y;
    if (next < 0) throw arithmetic_error("WD extension failed (building invalid)");
    e = next;
    w = ws;
  }
  {
    std::lock_guard<std::mutex> lock(b.cache_mutex);
    auto it = b.chart_cache.find({c, e});
    if (it != b.chart_cache.end()) return it->second;
  }
  ChartPtr chart = build_chart(b, c, e);
  {
    std::lock_guard<std::mutex> lock(b.cache_mutex);
    b.chart_cache.emplace(std::make_pair(c, e), chart);
  }
  return chart;
}

std::vector<Apartment> enumerate_apartments(const Building& b) {
  std::map<std::vector<int>, Apartment> seen;
  for (int c = 0; c < b.n_chambers; ++c)
    for (int d = c + 1; d < b.n_chambers; ++d) {
      if (!b.chambers_opposite(c, d)) continue;
      auto chart = apartment_containing(b, c, d);
      auto img = chart->image_chambers_sorted();
      if (!seen.count(img)) seen.emplace(img, Apartment{c, d, img});
    }
  std::vector<Apartment> out;
  out.reserve(seen.size());
  for (auto& [k, v] : seen) out.push_back(v);
  return out;
}

const std::vector<Apartment>& all_apartments(const Building& b) {
  {
    std::lock_guard<std::mutex> lock(b.cache_mutex);
    if (b.apartments_cache) return *b.apartments_cache;
  }
  auto aps = enumerate_apartments(b);
  std::lock_guard<std::mutex> lock(b.cache_mutex);
  if (!b.apartments_cache) b.apartments_cache = std::move(aps);
  return *b.apartments_cache;
}

bool are_opposite(const Building& b, int simplex_a, int simplex_b) {
  const auto& sa = b.simplices[simplex_a];
  const auto& sb = b.simplices[simplex_b];
  if (sa.dim != sb.dim) return false;
  if (b.sys->opposition_type_map(sa.types) != sb.types) return false;
  int ca = sa.carriers.front();
  int cb = sb.carriers.front();
  auto chart = apartment_containing(b, ca, cb);
  int pa = chart->pull_simplex(simplex_a);
  int pb = chart->pull_simplex(simplex_b);
  if (pa < 0 || pb < 0) throw arithmetic_error("are_opposite: simplex missing from chart");
  return b.sigma->thin_opposite(pa) == pb;
}

std::optional<std::pair<int, int>> automorphism_violation(const Building& b,
                                                          const std::vector<int>& perm) {
  if (int(perm.size()) != b.n_chambers) return std::make_pair(-1, -1);
  std::vector<char> hit(b.n_chambers, 0);
  for (int x : perm) {
    if (x < 0 || x >= b.n_chambers || hit[x]) return std::make_pair(-1, -1);
    hit[x] = 1;
  }
  for (int c = 0; c < b.n_chambers; ++c)
    for (int d = 0; d < b.n_chambers; ++d)
      if (b.delta(perm[c], perm[d]) != b.delta(c, d)) return std::make_pair(c, d);
  return std::nullopt;
}

std::vector<int> vertex_permutation(const Building& b, const std::vector<int>& perm) {
  std::vector<int> vp(b.vertices.size(), -1);
  for (int c = 0; c < b.n_chambers; ++c)
    for (int t = 0; t < b.rank(); ++t) {
      int v = b.chamber_vertex(c, t);
      int iv = b.chamber_vertex(perm[c], t);
      assert(vp[v] < 0 || vp[v] == iv);
      vp[v] = iv;
    }
  return vp;
}

}  // namespace crsb

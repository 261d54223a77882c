#include "crsb/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace crsb {

namespace {

BuildingPtr build_preset_token(const std::string& name) {
  if (name == "fano" || name == "pg22") return flag_building(2, 2);
  if (name == "pg32") return flag_building(3, 2);
  if (name == "pg23") return flag_building(2, 3);
  if (name == "hexagon") return thin_building(build_system(coxeter_matrix_preset("A2")), "hexagon");
  if (name == "b2") return thin_building(build_system(coxeter_matrix_preset("B2")), "b2");
  if (name == "a3") return thin_building(build_system(coxeter_matrix_preset("A3")), "a3");
  if (name == "g2") return thin_building(build_system(coxeter_matrix_preset("G2")), "g2");
  if (name == "s0") return rank1_building(2);
  if (name.rfind("rank1-", 0) == 0) return rank1_building(std::stoi(name.substr(6)));
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace

BuildingPtr build_preset(const std::string& name) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (true) {
    size_t star = name.find('*', pos);
    if (star == std::string::npos) {
      parts.push_back(name.substr(pos));
      break;
    }
    parts.push_back(name.substr(pos, star - pos));
    pos = star + 1;
  }
  BuildingPtr b = build_preset_token(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i) b = join_buildings(b, build_preset_token(parts[i]));
  return b;
}

json building_to_json(const Building& b, bool include_delta) {
  json j;
  if (!b.preset.empty()) j["preset"] = b.preset;
  json cm = json::array();
  for (int s = 0; s < b.sys->rank; ++s) {
    json row = json::array();
    for (int t = 0; t < b.sys->rank; ++t) row.push_back(b.sys->matrix.at(s, t));
    cm.push_back(row);
  }
  j["coxeter_matrix"] = cm;
  json chambers = json::array();
  for (int c = 0; c < b.n_chambers; ++c) chambers.push_back(c);
  j["chambers"] = chambers;
  json adj = json::object();
  for (int s = 0; s < b.sys->rank; ++s) {
    json panels = json::array();
    std::vector<char> done(b.n_chambers, 0);
    for (int c = 0; c < b.n_chambers; ++c) {
      if (done[c]) continue;
      auto panel = b.panel_of(c, s);
      for (int x : panel) done[x] = 1;
      panels.push_back(panel);
    }
    adj[std::to_string(s)] = panels;
  }
  j["adjacency"] = adj;
  if (include_delta) {
    json delta = json::array();
    for (int c = 0; c < b.n_chambers; ++c) {
      json row = json::array();
      for (int d = 0; d < b.n_chambers; ++d) row.push_back(b.delta(c, d));
      delta.push_back(row);
    }
    j["delta"] = delta;
  }
  return j;
}

BuildingPtr building_from_json(const json& j) {
  if (!j.contains("coxeter_matrix"))
    throw std::invalid_argument("building JSON: missing coxeter_matrix");
  const json& cm = j.at("coxeter_matrix");
  CoxeterMatrix m;
  m.rank = int(cm.size());
  for (const auto& row : cm) {
    if (int(row.size()) != m.rank)
      throw std::invalid_argument("building JSON: coxeter_matrix not square");
    for (const auto& e : row) m.entries.push_back(e.get<int>());
  }
  auto sys = build_system(m);
  if (!j.contains("chambers")) throw std::invalid_argument("building JSON: missing chambers");
  int n = int(j.at("chambers").size());
  for (int c = 0; c < n; ++c)
    if (j.at("chambers")[c].get<int>() != c)
      throw std::invalid_argument("building JSON: chambers must be 0..n-1");

  BuildingPtr built;
  if (j.contains("delta")) {
    const json& dj = j.at("delta");
    if (int(dj.size()) != n) throw std::invalid_argument("building JSON: delta row count");
    std::vector<int32_t> delta(size_t(n) * n);
    for (int c = 0; c < n; ++c) {
      if (int(dj[c].size()) != n) throw std::invalid_argument("building JSON: delta column count");
      for (int d = 0; d < n; ++d) {
        int w = dj[c][d].get<int>();
        if (w < 0 || w >= sys->order)
          throw std::invalid_argument("building JSON: delta entry out of range");
        delta[size_t(c) * n + d] = w;
      }
    }
    built = make_building(sys, n, std::move(delta),
                          j.contains("preset") ? j.at("preset").get<std::string>() : "");
  } else {
    if (!j.contains("adjacency"))
      throw std::invalid_argument("building JSON: need adjacency or delta");
    std::vector<std::vector<std::vector<int>>> panels(sys->rank);
    for (int s = 0; s < sys->rank; ++s) {
      const json& pj = j.at("adjacency").at(std::to_string(s));
      for (const auto& panel : pj) panels[s].push_back(panel.get<std::vector<int>>());
    }
    built = building_from_adjacency(sys, n, panels,
                                    j.contains("preset") ? j.at("preset").get<std::string>() : "");
  }
  // Restore structural provenance when the preset reproduces the tables.
  if (!built->preset.empty()) {
    try {
      BuildingPtr fresh = build_preset(built->preset);
      if (fresh->n_chambers == built->n_chambers &&
          fresh->delta_table() == built->delta_table() &&
          fresh->sys->matrix.entries == built->sys->matrix.entries)
        return fresh;
    } catch (const std::exception&) {
      // Unknown preset label: keep the raw building.
    }
  }
  return built;
}

json simplex_to_json(const Building& b, int sid) {
  json out = json::array();
  if (sid < 0) return out;
  for (int v : b.simplices[sid].verts) out.push_back(json::array({b.vertices[v].type, v}));
  return out;
}

json subcomplex_to_json(const Subcomplex& a) {
  json j = json::array();
  for (int sid : a.ids()) j.push_back(simplex_to_json(a.building(), sid));
  return j;
}

Subcomplex subcomplex_from_json(const BuildingPtr& b, const json& j, bool close_faces) {
  std::vector<int> ids;
  for (const auto& sj : j) {
    std::vector<int> verts;
    for (const auto& pair : sj) {
      int type = pair[0].get<int>();
      int vid = pair[1].get<int>();
      if (vid < 0 || vid >= int(b->vertices.size()) || b->vertices[vid].type != type)
        throw std::invalid_argument("subcomplex JSON: invalid (type, vertex) pair");
      verts.push_back(vid);
    }
    std::sort(verts.begin(), verts.end());
    int sid = b->simplex_by_verts(verts);
    if (sid < 0) throw std::invalid_argument("subcomplex JSON: not a simplex of the building");
    ids.push_back(sid);
  }
  return Subcomplex(b, std::move(ids), close_faces);
}

json wd_report_to_json(const WdReport& r) {
  json j;
  j["ok"] = r.ok();
  json vs = json::array();
  for (const auto& v : r.violations) {
    vs.push_back({{"rule", v.rule},
                  {"c", v.c},
                  {"d", v.d},
                  {"e", v.e},
                  {"s", v.s},
                  {"detail", v.detail}});
  }
  j["violations"] = vs;
  return j;
}

json convexity_to_json(const Building& b, const ConvexityCertificate& c) {
  json j;
  j["convex"] = c.convex;
  if (!c.convex) {
    j["witness"] = {{"a", simplex_to_json(b, c.witness_a)},
                    {"b", simplex_to_json(b, c.witness_b)},
                    {"missing", simplex_to_json(b, c.missing)}};
  }
  return j;
}

json cr_to_json(const Building& b, const CrCertificate& c) {
  json j;
  j["cr"] = c.completely_reducible;
  j["mode"] = c.mode == CrMode::All ? "ALL" : (c.mode == CrMode::Vertices ? "VERTICES" : "ONE_PAIR");
  if (!c.completely_reducible && c.witness >= 0)
    j["witness"] = simplex_to_json(b, c.witness);
  if (c.pair.first >= 0)
    j["pair"] = {simplex_to_json(b, c.pair.first), simplex_to_json(b, c.pair.second)};
  return j;
}

json decomposition_to_json(const Building& b, const Decomposition& d) {
  json j;
  j["cr"] = d.cr.completely_reducible;
  j["convex"] = d.convexity.convex;
  j["m"] = d.m;
  j["k"] = d.k;
  if (d.z_present) {
    json zm = json::array();
    for (int s = 0; s < d.z_matrix.rank; ++s) {
      json row = json::array();
      for (int t = 0; t < d.z_matrix.rank; ++t) row.push_back(d.z_matrix.at(s, t));
      zm.push_back(row);
    }
    j["Z"] = {{"chambers", d.z ? d.z->n_chambers : 0},
              {"coxeter_matrix", zm},
              {"wd_ok", d.z_wd_ok},
              {"thick", d.z_thick}};
    json classes = json::array();
    for (const auto& cls : d.z_classes) {
      json members = json::array();
      for (int sid : cls) members.push_back(simplex_to_json(b, sid));
      classes.push_back(members);
    }
    j["classes"] = classes;
  } else {
    j["Z"] = {{"chambers", 0}, {"coxeter_matrix", json::array()}};
  }
  if (!d.convexity.convex) j["convexity_witness"] = convexity_to_json(b, d.convexity);
  if (!d.cr.completely_reducible && d.cr.witness >= 0)
    j["cr_witness"] = simplex_to_json(b, d.cr.witness);
  j["violations"] = violations_to_json(d.violations);
  return j;
}

json violations_to_json(const std::vector<Violation>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back({{"kind", x.kind}, {"detail", x.detail}});
  return out;
}

json battery_to_json(const BatteryResult& r) {
  json j;
  j["cases"] = r.cases;
  j["convex_cases"] = r.convex_cases;
  j["cr_cases"] = r.cr_cases;
  j["skipped_empty"] = r.skipped_empty;
  j["violations"] = violations_to_json(r.violations);
  j["ok"] = r.ok();
  return j;
}

std::string subcomplex_dot(const Subcomplex& a) {
  std::ostringstream os;
  os << "graph chambers {\n";
  auto pur = purity_and_dimension(a);
  if (pur.pure && pur.dim >= 1) {
    auto g = chamber_graph(a);
    for (size_t i = 0; i < g.nodes.size(); ++i) os << "  n" << i << " [label=\"" << g.nodes[i] << "\"];\n";
    for (auto& [i, j, f] : g.edges) os << "  n" << i << " -- n" << j << " [label=\"" << f << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string building_dot(const Building& b) {
  std::ostringstream os;
  os << "graph building {\n";
  for (int c = 0; c < b.n_chambers; ++c) os << "  c" << c << ";\n";
  for (int c = 0; c < b.n_chambers; ++c)
    for (int s = 0; s < b.sys->rank; ++s)
      for (int d : b.s_adjacent(c, s))
        if (c < d) os << "  c" << c << " -- c" << d << " [label=\"" << s << "\"];\n";
  os << "}\n";
  return os.str();
}

json realization_debug_json(const CoxeterSystem& sys) {
  json j;
  json gram = json::array();
  for (int i = 0; i < sys.rank; ++i) {
    json row = json::array();
    for (int k = 0; k < sys.rank; ++k) row.push_back(sys.gram.at(i, k).str());
    gram.push_back(row);
  }
  j["gram"] = gram;
  json refl = json::array();
  for (int s = 0; s < sys.rank; ++s) {
    const Mat& m = sys.mat_of(sys.gen_elem(s));
    json mat = json::array();
    for (int i = 0; i < sys.rank; ++i) {
      json row = json::array();
      for (int k = 0; k < sys.rank; ++k) row.push_back(m.at(i, k).str());
      mat.push_back(row);
    }
    refl.push_back(mat);
  }
  j["reflections"] = refl;
  return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace crsb

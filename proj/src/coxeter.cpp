#include "crsb/coxeter.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace crsb {

namespace {

constexpr int kMaxOrder = 200000;

// Integer matrix key for hashing group elements during enumeration.
struct IMat {
  int n = 0;
  std::vector<long long> a;

  static IMat identity(int n) {
    IMat m;
    m.n = n;
    m.a.assign(size_t(n) * n, 0);
    for (int i = 0; i < n; ++i) m.a[size_t(i) * n + i] = 1;
    return m;
  }
  long long at(int i, int j) const { return a[size_t(i) * n + j]; }
  long long& at(int i, int j) { return a[size_t(i) * n + j]; }
  IMat mul(const IMat& o) const {
    IMat r;
    r.n = n;
    r.a.assign(a.size(), 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        long long x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < n; ++j) r.at(i, j) += x * o.at(k, j);
      }
    return r;
  }
  bool operator==(const IMat& o) const { return a == o.a; }
};

struct IMatHash {
  size_t operator()(const IMat& m) const {
    size_t h = 1469598103934665603ULL;
    for (long long v : m.a) {
      h ^= std::hash<long long>()(v);
      h *= 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace

CoxeterMatrix CoxeterMatrix::of(int rank, std::initializer_list<int> vals) {
  CoxeterMatrix m;
  m.rank = rank;
  m.entries.assign(vals.begin(), vals.end());
  assert(int(m.entries.size()) == rank * rank);
  return m;
}

CoxeterMatrix CoxeterMatrix::product(const CoxeterMatrix& a, const CoxeterMatrix& b) {
  CoxeterMatrix m;
  m.rank = a.rank + b.rank;
  m.entries.assign(size_t(m.rank) * m.rank, 2);
  for (int s = 0; s < a.rank; ++s)
    for (int t = 0; t < a.rank; ++t) m.at(s, t) = a.at(s, t);
  for (int s = 0; s < b.rank; ++s)
    for (int t = 0; t < b.rank; ++t) m.at(a.rank + s, a.rank + t) = b.at(s, t);
  return m;
}

std::optional<std::string> CoxeterMatrix::validate() const {
  if (rank < 1) return "rank must be >= 1";
  if (int(entries.size()) != rank * rank) return "entry count does not match rank";
  for (int s = 0; s < rank; ++s) {
    if (at(s, s) != 1) {
      std::ostringstream os;
      os << "m(" << s << "," << s << ") = " << at(s, s) << ", diagonal must be 1";
      return os.str();
    }
    for (int t = 0; t < rank; ++t) {
      if (at(s, t) != at(t, s)) {
        std::ostringstream os;
        os << "m(" << s << "," << t << ") != m(" << t << "," << s << ")";
        return os.str();
      }
      if (s != t && at(s, t) != 2 && at(s, t) != 3 && at(s, t) != 4 && at(s, t) != 6) {
        std::ostringstream os;
        os << "m(" << s << "," << t << ") = " << at(s, t)
           << " not in {2,3,4,6} (non-crystallographic or infinite)";
        return os.str();
      }
    }
  }
  return std::nullopt;
}

Vec CoxeterSystem::fundamental_ray(int s) const {
  Vec v(rank);
  v[s] = 1;
  return v;
}

int CoxeterSystem::minimal_coset_rep(int w, TypeSet j) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < rank; ++s) {
      if (!type_in(j, s)) continue;
      int ws = mul_gen(w, s);
      if (lengths[ws] < lengths[w]) {
        w = ws;
        changed = true;
      }
    }
  }
  return w;
}

TypeSet CoxeterSystem::opposition_type_map(TypeSet j) const {
  TypeSet r = 0;
  for (int s = 0; s < rank; ++s)
    if (type_in(j, s)) r |= 1u << opposition_of_gen(s);
  return r;
}

int CoxeterSystem::opposition_of_gen(int s) const {
  int e = mul(mul_gen(longest, s), longest);  // w0 * s * w0
  for (int t = 0; t < rank; ++t)
    if (gen_elem(t) == e) return t;
  throw arithmetic_error("opposition_of_gen: conjugate is not a generator");
}

CoxeterSystemPtr build_system(const CoxeterMatrix& m) {
  if (auto err = m.validate()) throw std::invalid_argument("invalid Coxeter matrix: " + *err);
  int n = m.rank;

  // Integer Cartan matrix: a(s,s)=2; for s<t, a(s,t) = -1 and a(t,s) = -c
  // with c = 1,2,3 for m = 3,4,6 (orientation fixed by index order).
  std::vector<std::vector<long long>> cartan(n, std::vector<long long>(n, 0));
  for (int s = 0; s < n; ++s) cartan[s][s] = 2;
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      int mst = m.at(s, t);
      long long c = mst == 3 ? 1 : mst == 4 ? 2 : mst == 6 ? 3 : 0;
      if (c != 0) {
        cartan[s][t] = -1;
        cartan[t][s] = -c;
      }
    }

  // Symmetrizer d: d_s a(s,t) = d_t a(t,s) along edges. The diagram of a
  // finite system is a forest, so BFS propagation is consistent; conflicts
  // mean the matrix is not of finite type.
  std::vector<Rat> d(n, Rat(0));
  for (int start = 0; start < n; ++start) {
    if (!d[start].is_zero()) continue;
    d[start] = 1;
    std::deque<int> q{start};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v = 0; v < n; ++v) {
        if (cartan[u][v] == 0 || v == u) continue;
        Rat want = d[u] * Rat(cartan[u][v], cartan[v][u]);
        if (d[v].is_zero()) {
          d[v] = want;
          q.push_back(v);
        } else if (d[v] != want) {
          throw std::invalid_argument(
              "invalid Coxeter matrix: diagram has an inconsistent cycle (not finite)");
        }
      }
    }
  }

  // Positive definiteness of the symmetrized matrix S = diag(d) * A via
  // leading principal minors; rejects affine/indefinite (infinite) types.
  Mat sym(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) sym.at(s, t) = d[s] * Rat(cartan[s][t]);
  for (int k = 1; k <= n; ++k) {
    Mat lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead.at(i, j) = sym.at(i, j);
    if (det(lead) <= Rat(0)) {
      std::ostringstream os;
      os << "invalid Coxeter matrix: bilinear form not positive definite "
         << "(leading minor " << k << "), group is infinite";
      throw std::invalid_argument(os.str());
    }
  }

  auto sys = std::make_shared<CoxeterSystem>();
  sys->matrix = m;
  sys->rank = n;
  sys->cartan = cartan;

  // Gram form of the fundamental weights: G = diag(d) * A^{-1}.
  {
    Mat a(n, n);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) a.at(s, t) = Rat(cartan[s][t]);
    auto ainv = inverse(a);
    if (!ainv) throw std::invalid_argument("invalid Coxeter matrix: singular Cartan matrix");
    Mat g(n, n);
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t) g.at(s, t) = d[s] * ainv->at(s, t);
    sys->gram = g;
  }

  // Simple reflections in the weight basis: column t of R_t is e_t - A e_t.
  std::vector<IMat> gen(n);
  for (int t = 0; t < n; ++t) {
    gen[t] = IMat::identity(n);
    for (int u = 0; u < n; ++u) gen[t].at(u, t) = (u == t ? 1 : 0) - cartan[u][t];
  }

  // Shortlex BFS enumeration of the group as a matrix group.
  std::vector<IMat> elems{IMat::identity(n)};
  std::unordered_map<IMat, int, IMatHash> index;
  index.emplace(elems[0], 0);
  sys->words.push_back({});
  sys->lengths.push_back(0);
  std::vector<int> rmul;
  for (size_t head = 0; head < elems.size(); ++head) {
    rmul.resize((head + 1) * n, -1);
    for (int s = 0; s < n; ++s) {
      IMat next = elems[head].mul(gen[s]);
      auto it = index.find(next);
      if (it == index.end()) {
        int id = int(elems.size());
        if (id >= kMaxOrder)
          throw std::invalid_argument("Coxeter group too large for enumeration");
        index.emplace(next, id);
        elems.push_back(std::move(next));
        auto w = sys->words[head];
        w.push_back(uint8_t(s));
        sys->words.push_back(std::move(w));
        sys->lengths.push_back(sys->lengths[head] + 1);
        rmul[head * n + s] = id;
      } else {
        rmul[head * n + s] = it->second;
      }
    }
  }
  sys->order = int(elems.size());
  sys->rmul_ = std::move(rmul);

  // Exact matrices per element.
  sys->elem_matrix.reserve(sys->order);
  for (int w = 0; w < sys->order; ++w) {
    Mat mm(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mm.at(i, j) = Rat(elems[w].at(i, j));
    sys->elem_matrix.push_back(std::move(mm));
  }

  // Inverses: fold the reversed word (generators are involutions).
  sys->inverse_.resize(sys->order);
  for (int w = 0; w < sys->order; ++w) {
    int r = 0;
    const auto& wd = sys->words[w];
    for (auto it = wd.rbegin(); it != wd.rend(); ++it) r = sys->mul_gen(r, *it);
    sys->inverse_[w] = r;
  }

  // Longest element: the unique length maximum (BFS order puts it last).
  sys->longest = sys->order - 1;
  for (int s = 0; s < n; ++s)
    if (sys->lengths[sys->mul_gen(sys->longest, s)] >= sys->lengths[sys->longest])
      throw arithmetic_error("longest element has a non-descent (enumeration bug)");

  return sys;
}

int longest_element(const CoxeterSystem& sys) { return sys.longest; }

namespace {

CoxeterMatrix irreducible_preset(const std::string& name) {
  auto chain = [](int rank, std::vector<int> ms) {
    CoxeterMatrix m;
    m.rank = rank;
    m.entries.assign(size_t(rank) * rank, 2);
    for (int s = 0; s < rank; ++s) m.at(s, s) = 1;
    for (int s = 0; s + 1 < rank; ++s) {
      m.at(s, s + 1) = ms[s];
      m.at(s + 1, s) = ms[s];
    }
    return m;
  };
  if (name == "A1") return chain(1, {});
  if (name == "A2") return chain(2, {3});
  if (name == "A3") return chain(3, {3, 3});
  if (name == "A4") return chain(4, {3, 3, 3});
  if (name == "B2") return chain(2, {4});
  if (name == "B3") return chain(3, {4, 3});
  if (name == "B4") return chain(4, {4, 3, 3});
  if (name == "G2") return chain(2, {6});
  throw std::invalid_argument("unknown Coxeter preset: " + name);
}

}  // namespace

CoxeterMatrix coxeter_matrix_preset(const std::string& name) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (true) {
    size_t x = name.find('x', pos);
    if (x == std::string::npos) {
      parts.push_back(name.substr(pos));
      break;
    }
    parts.push_back(name.substr(pos, x - pos));
    pos = x + 1;
  }
  CoxeterMatrix m = irreducible_preset(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i)
    m = CoxeterMatrix::product(m, irreducible_preset(parts[i]));
  return m;
}

}  // namespace crsb

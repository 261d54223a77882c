#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crsb/geometry.hpp"

using namespace crsb;

namespace {

uint64_t splitmix(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Vec random_ray(uint64_t& seed, int dim) {
  while (true) {
    Vec v(dim);
    bool nz = false;
    for (int i = 0; i < dim; ++i) {
      long long num = (long long)(splitmix(seed) % 41) - 20;
      long long den = 1 + (long long)(splitmix(seed) % 7);
      v[i] = Rat::of(num, den);
      nz = nz || num != 0;
    }
    if (nz) return v;
  }
}

}  // namespace

TEST_CASE("A1 realization: rays +1 and -1") {
  auto sys = build_system(coxeter_matrix_preset("A1"));
  auto r = realize(sys);
  CHECK(r.dim == 1);
  CHECK(r.fundamental_rays[0] == Vec{Rat(1)});
  CHECK(r.act(sys->gen_elem(0), r.fundamental_rays[0]) == Vec{Rat(-1)});
}

TEST_CASE("A2 Gram form is the scaled inverse Cartan matrix") {
  auto sys = build_system(coxeter_matrix_preset("A2"));
  auto r = realize(sys);
  CHECK(r.gram.at(0, 0) == Rat::of(2, 3));
  CHECK(r.gram.at(0, 1) == Rat::of(1, 3));
  CHECK(r.gram.at(1, 0) == Rat::of(1, 3));
  CHECK(r.gram.at(1, 1) == Rat::of(2, 3));
}

TEST_CASE("reflections preserve the Gram form and satisfy the relations") {
  for (const char* name : {"A2", "B2", "G2", "A3", "B3", "A2xA1"}) {
    auto sys = build_system(coxeter_matrix_preset(name));
    for (int s = 0; s < sys->rank; ++s) {
      const Mat& rs = sys->mat_of(sys->gen_elem(s));
      CHECK(rs.transpose().mul(sys->gram).mul(rs) == sys->gram);
      for (int t = 0; t < sys->rank; ++t) {
        // (R_s R_t)^m = identity with m = matrix entry.
        Mat p = rs.mul(sys->mat_of(sys->gen_elem(t)));
        Mat acc = Mat::identity(sys->rank);
        for (int k = 0; k < sys->matrix.at(s, t); ++k) acc = acc.mul(p);
        CHECK(acc == Mat::identity(sys->rank));
      }
    }
  }
}

TEST_CASE("B2 reflection matrices are integral in the weight basis") {
  auto sys = build_system(coxeter_matrix_preset("B2"));
  for (int w = 0; w < sys->order; ++w)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(sys->mat_of(w).at(i, j).den() == 1);
}

TEST_CASE("action is a homomorphism and involutive on generators") {
  auto sys = build_system(coxeter_matrix_preset("A3"));
  auto r = realize(sys);
  uint64_t seed = 11;
  for (int trial = 0; trial < 50; ++trial) {
    Vec x = random_ray(seed, 3);
    int g = int(splitmix(seed) % sys->order);
    int h = int(splitmix(seed) % sys->order);
    CHECK(r.act(0, x) == x);
    CHECK(r.act(sys->mul(g, h), x) == r.act(g, r.act(h, x)));
    int s = int(splitmix(seed) % sys->rank);
    Vec sx = r.act(sys->gen_elem(s), x);
    CHECK(r.act(sys->gen_elem(s), sx) == x);
  }
}

TEST_CASE("A2: w0 maps the fundamental chamber to its negative") {
  auto sys = build_system(coxeter_matrix_preset("A2"));
  auto r = realize(sys);
  int w0 = sys->longest;
  Vec ws = r.act(w0, r.fundamental_rays[0]);
  CHECK(ws == Vec{Rat(0), Rat(-1)});  // -omega_t
  CHECK(!antipodal(r.fundamental_rays[0], ws));
  CHECK(antipodal(r.fundamental_rays[1], ws));
}

TEST_CASE("A2 orthogonal complement under the Gram form") {
  auto sys = build_system(coxeter_matrix_preset("A2"));
  auto r = realize(sys);
  auto line = Subspace::span({r.fundamental_rays[0]}, 2);
  auto comp = orth_complement_within(line, Subspace::full(2), r.gram);
  CHECK(comp.dim() == 1);
  CHECK(inner(r.gram, comp.basis_row(0), r.fundamental_rays[0]).is_zero());
  // Reflection along the complement line within the plane is an involution
  // fixing exactly that line.
  Mat refl = reflect_along(comp, Subspace::full(2), r.gram);
  CHECK(refl.mul(refl) == Mat::identity(2));
  CHECK(refl.apply(comp.basis_row(0)) == comp.basis_row(0));
  CHECK(refl.apply(r.fundamental_rays[0]) == Rat(-1) * r.fundamental_rays[0]);
}

TEST_CASE("antipodal basics") {
  Vec u{Rat(2), Rat(1)};
  CHECK(antipodal(u, Rat(-3) * u));
  CHECK(!antipodal(u, u));
  CHECK(!antipodal(u, Vec{Rat(1), Rat(2)}));
  CHECK(same_ray(u, Rat(5) * u));
  CHECK_THROWS_AS(antipodal(u, Vec{Rat(0), Rat(0)}), arithmetic_error);
}

TEST_CASE("chamber cones tile the sphere") {
  for (const char* name : {"A2", "B2", "A2xA1"}) {
    auto sys = build_system(coxeter_matrix_preset(name));
    auto r = realize(sys);
    uint64_t seed = 99;
    for (int trial = 0; trial < 40; ++trial) {
      Vec x = random_ray(seed, sys->rank);
      int containing = 0, interior = 0;
      for (int w = 0; w < sys->order; ++w) {
        std::vector<Vec> rays;
        for (int s = 0; s < sys->rank; ++s) rays.push_back(r.vertex_ray(w, s));
        ConeSide side = cone_side(rays, x);
        if (side != ConeSide::Outside) ++containing;
        if (side == ConeSide::Interior) ++interior;
      }
      CHECK(containing >= 1);
      CHECK(interior <= 1);  // interiors pairwise disjoint
    }
  }
}

TEST_CASE("B2 tiles the circle with 8 chambers") {
  auto sys = build_system(coxeter_matrix_preset("B2"));
  CHECK(sys->order == 8);
  auto r = realize(sys);
  // Every chamber cone is 2-dimensional and distinct.
  std::set<std::pair<std::string, std::string>> seen;
  for (int w = 0; w < 8; ++w) {
    Vec a = r.vertex_ray(w, 0), b = r.vertex_ray(w, 1);
    CHECK(!same_ray(a, b));
    std::string ka, kb;
    for (auto& x : a) ka += x.str() + ",";
    for (auto& x : b) kb += x.str() + ",";
    if (kb < ka) std::swap(ka, kb);
    seen.insert({ka, kb});
  }
  CHECK(seen.size() == 8);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crsb/linalg.hpp"
#include "crsb/lp.hpp"
#include "crsb/rational.hpp"

using namespace crsb;

TEST_CASE("rational arithmetic and normalization") {
  Rat a = Rat::of(2, 4);
  CHECK(a == Rat::of(1, 2));
  CHECK((a + a) == Rat(1));
  CHECK((a * Rat::of(-2, 3)) == Rat::of(-1, 3));
  CHECK((Rat(1) / Rat::of(3, 7)) == Rat::of(7, 3));
  CHECK(Rat::of(-3, -6) == Rat::of(1, 2));
  CHECK(Rat::of(1, -2).sign() == -1);
  CHECK(Rat::of(5, 3).str() == "5/3");
  CHECK(Rat(-7).str() == "-7");
  CHECK(Rat::parse("-22/7") == Rat::of(-22, 7));
  CHECK(Rat::parse("13") == Rat(13));
  CHECK(Rat::of(1, 3) < Rat::of(1, 2));
  CHECK_THROWS_AS(Rat(1) / Rat(0), arithmetic_error);
}

TEST_CASE("int128 string round trip") {
  int128 big = int128(1000000000000000000LL) * 1000;
  CHECK(int128_from_string(int128_to_string(big)) == big);
  CHECK(int128_to_string(-big) == "-" + int128_to_string(big));
}

TEST_CASE("rref, solve, inverse, det") {
  Mat m(2, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = -1;
  m.at(1, 0) = -1;
  m.at(1, 1) = 2;
  CHECK(det(m) == Rat(3));
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(inv->at(0, 0) == Rat::of(2, 3));
  CHECK(inv->at(0, 1) == Rat::of(1, 3));
  CHECK(m.mul(*inv) == Mat::identity(2));

  auto x = solve(m, Vec{Rat(1), Rat(1)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(1));
  CHECK((*x)[1] == Rat(1));

  // Inconsistent system.
  Mat z(2, 1);
  z.at(0, 0) = 1;
  z.at(1, 0) = 1;
  CHECK(!solve(z, Vec{Rat(0), Rat(1)}).has_value());
}

TEST_CASE("subspace algebra") {
  // Plane in Q^3 and a line inside it.
  Vec e1{Rat(1), Rat(0), Rat(0)};
  Vec e2{Rat(0), Rat(1), Rat(0)};
  Vec diag{Rat(1), Rat(1), Rat(1)};
  auto plane = Subspace::span({e1, e2}, 3);
  auto line = Subspace::span({e1 + e2}, 3);
  CHECK(plane.dim() == 2);
  CHECK(plane.contains(e1 - e2));
  CHECK(!plane.contains(diag));
  CHECK(intersect(plane, Subspace::span({diag, e1}, 3)).dim() == 1);
  CHECK(intersect(plane, plane) == plane);
  CHECK(plane.contains(line));

  Mat g = Mat::identity(3);
  auto comp = orth_complement_within(line, plane, g);
  CHECK(comp.dim() == 1);
  CHECK(inner(g, comp.basis_row(0), e1 + e2).is_zero());

  auto refl = reflect_along(line, plane, g);
  CHECK(refl.mul(refl) == Mat::identity(3));
  CHECK(refl.apply(e1 + e2) == e1 + e2);
  // Fixed space restricted to the plane is exactly the line.
  Vec w = refl.apply(e1);
  CHECK(w != e1);
  CHECK_THROWS(reflect_along(Subspace::span({e1}, 3), Subspace::full(3), g));
}

TEST_CASE("exact feasibility") {
  // x + y = 1, x,y >= 0 : feasible.
  Mat a(1, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 1;
  CHECK(feasible_nonneg(a, Vec{Rat(1)}));
  // x + y = -1 infeasible.
  CHECK(!feasible_nonneg(a, Vec{Rat(-1)}));
  // x - y = 3 feasible.
  Mat b(1, 2);
  b.at(0, 0) = 1;
  b.at(0, 1) = -1;
  CHECK(feasible_nonneg(b, Vec{Rat(3)}));
}

TEST_CASE("cone predicates") {
  Vec u{Rat(1), Rat(0)};
  Vec v{Rat(0), Rat(1)};
  Vec mu{Rat(-1), Rat(0)};

  // Single-ray cone: generator is interior of the 1-dim cone.
  CHECK(cone_side({u}, u) == ConeSide::Interior);
  CHECK(cone_side({u}, Vec{Rat(2), Rat(0)}) == ConeSide::Interior);
  CHECK(cone_side({u}, v) == ConeSide::Outside);

  // Two independent rays: sum interior, generators boundary.
  CHECK(cone_side({u, v}, u + v) == ConeSide::Interior);
  CHECK(cone_side({u, v}, u) == ConeSide::Boundary);
  CHECK(cone_side({u, v}, mu) == ConeSide::Outside);

  // Line cone: independent vector outside.
  CHECK(cone_side({u, mu}, v) == ConeSide::Outside);
  CHECK(cone_side({u, mu}, u) == ConeSide::Interior);

  CHECK_THROWS_AS(cone_side({u}, Vec{Rat(0), Rat(0)}), arithmetic_error);

  // Rescaling invariance.
  CHECK(cone_side({Rat(7) * u, v}, Rat::of(1, 3) * (u + v)) == ConeSide::Interior);

  // relint of the edge cone (u,v) meets the ray through u+v but not through u.
  CHECK(relint_meets_cone({u, v}, {u + v}));
  CHECK(!relint_meets_cone({v}, {u}));
  CHECK(relint_meets_cone({u}, {u, mu}));
  // relint of a 2-cell vs the line span{u}: only boundary touches.
  CHECK(!relint_meets_subspace({u, v}, Subspace::span({u}, 2)));
  CHECK(relint_meets_subspace({u, v}, Subspace::span({u + v}, 2)));
}

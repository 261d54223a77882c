#pragma once

#include "crsb/coxeter.hpp"
#include "crsb/linalg.hpp"
#include "crsb/lp.hpp"

namespace crsb {

/// Spherical realization of a Coxeter complex in the weight basis. Points of
/// the sphere are rays: vectors up to positive scale, never normalized.
struct Realization {
  CoxeterSystemPtr sys;
  int dim = 0;
  Mat gram;
  std::vector<Vec> fundamental_rays;  // one per generator

  Vec act(int w, const Vec& x) const { return sys->act(w, x); }
  Rat inner_product(const Vec& u, const Vec& v) const { return inner(gram, u, v); }
  /// Vertex ray of the type-s vertex of the chamber of w.
  Vec vertex_ray(int w, int s) const { return sys->act(w, fundamental_rays[s]); }
};

Realization realize(const CoxeterSystemPtr& sys);

/// u and v on the same ray (v = positive multiple of u)?
bool same_ray(const Vec& u, const Vec& v);
/// v a negative multiple of u? Throws on zero vectors.
bool antipodal(const Vec& u, const Vec& v);

}  // namespace crsb

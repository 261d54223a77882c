#include "crsb/geometry.hpp"

namespace crsb {

Realization realize(const CoxeterSystemPtr& sys) {
  Realization r;
  r.sys = sys;
  r.dim = sys->rank;
  r.gram = sys->gram;
  for (int s = 0; s < sys->rank; ++s) r.fundamental_rays.push_back(sys->fundamental_ray(s));
  return r;
}

namespace {

// v = lambda * u: returns lambda's sign, 0 if not proportional.
int proportionality_sign(const Vec& u, const Vec& v) {
  int lead = -1;
  for (size_t i = 0; i < u.size(); ++i)
    if (!u[i].is_zero()) {
      lead = int(i);
      break;
    }
  if (lead < 0) throw arithmetic_error("proportionality on zero vector");
  Rat lambda = v[lead] / u[lead];
  if (lambda.is_zero()) return 0;
  for (size_t i = 0; i < u.size(); ++i)
    if (v[i] != lambda * u[i]) return 0;
  return lambda.sign();
}

}  // namespace

bool same_ray(const Vec& u, const Vec& v) { return proportionality_sign(u, v) > 0; }

bool antipodal(const Vec& u, const Vec& v) {
  if (is_zero_vec(u) || is_zero_vec(v)) throw arithmetic_error("antipodal on zero vector");
  return proportionality_sign(u, v) < 0;
}

}  // namespace crsb

// Perfect-gas Euler thermodynamics: state conversions, directed flux, and the
// analytic flux Jacobian with respect to primitive variables.
//
// Primitive state vectors are (rho, u, v, w, p); conservative vectors are
// (rho, rho*u, rho*v, rho*w, rho*E). All functions are pure and templated on
// the scalar so tests can instantiate them in extended precision.
#ifndef EFV_GAS_HPP
#define EFV_GAS_HPP

#include <cmath>
#include <optional>

#include "efv/types.hpp"

namespace efv {

struct GasModel {
  double gamma = 1.4;  // ratio of specific heats, must be > 1
};

template <class S>
bool primitive_is_physical(const Vec5T<S>& w) {
  return w[RHO] > S(0) && w[PRE] > S(0);
}

/// rho*E = p/(gamma-1) + rho*|vel|^2/2.
template <class S>
Vec5T<S> prim_to_cons(const Vec5T<S>& w, const GasModel& gas) {
  Vec5T<S> u;
  const S rho = w[RHO];
  const Vec3T<S> vel = w.template segment<3>(VX);
  u[RHO] = rho;
  u.template segment<3>(VX) = rho * vel;
  u[ENE] = w[PRE] / S(gas.gamma - 1.0) + S(0.5) * rho * vel.squaredNorm();
  return u;
}

/// Exact algebraic inverse of prim_to_cons. Empty when the state is
/// non-physical (rho <= 0 or p <= 0); the solver uses this to reject updates.
template <class S>
std::optional<Vec5T<S>> cons_to_prim(const Vec5T<S>& u, const GasModel& gas) {
  const S rho = u[RHO];
  if (!(rho > S(0))) return std::nullopt;
  Vec5T<S> w;
  const Vec3T<S> vel = u.template segment<3>(VX) / rho;
  w[RHO] = rho;
  w.template segment<3>(VX) = vel;
  w[PRE] = S(gas.gamma - 1.0) * (u[ENE] - S(0.5) * rho * vel.squaredNorm());
  if (!(w[PRE] > S(0))) return std::nullopt;
  return w;
}

/// a = sqrt(gamma*p/rho).
template <class S>
S sound_speed(const Vec5T<S>& w, const GasModel& gas) {
  using std::sqrt;
  return sqrt(S(gas.gamma) * w[PRE] / w[RHO]);
}

/// Directed flux f = F(u(w)) . n for an arbitrary (not necessarily unit) n.
/// Linear in n, so Cartesian flux components are directed_flux with e_d.
template <class S>
Vec5T<S> directed_flux(const Vec5T<S>& w, const Vec3T<S>& n, const GasModel& gas) {
  const S rho = w[RHO];
  const Vec3T<S> vel = w.template segment<3>(VX);
  const S p = w[PRE];
  const S q = vel.dot(n);
  const S rhoE = p / S(gas.gamma - 1.0) + S(0.5) * rho * vel.squaredNorm();
  Vec5T<S> f;
  f[RHO] = rho * q;
  f.template segment<3>(VX) = rho * q * vel + p * n;
  f[ENE] = (rhoE + p) * q;
  return f;
}

/// Analytic Jacobian of directed_flux with respect to the primitive variables,
/// d(F.n)/d(rho,u,v,w,p), evaluated at w.
template <class S>
Mat5T<S> flux_jacobian_primitive(const Vec5T<S>& w, const Vec3T<S>& n, const GasModel& gas) {
  const S rho = w[RHO];
  const Vec3T<S> vel = w.template segment<3>(VX);
  const S p = w[PRE];
  const S q = vel.dot(n);
  const S v2 = vel.squaredNorm();
  const S gog1 = S(gas.gamma / (gas.gamma - 1.0));
  const S rhoH = gog1 * p + S(0.5) * rho * v2;  // rho*E + p

  Mat5T<S> jac;
  jac.setZero();

  jac(RHO, RHO) = q;
  jac.template block<1, 3>(RHO, VX) = rho * n.transpose();

  for (int d = 0; d < 3; ++d) {
    const int row = VX + d;
    jac(row, RHO) = vel[d] * q;
    jac.template block<1, 3>(row, VX) = rho * vel[d] * n.transpose();
    jac(row, VX + d) += rho * q;
    jac(row, PRE) = n[d];
  }

  jac(ENE, RHO) = S(0.5) * v2 * q;
  jac.template block<1, 3>(ENE, VX) = rhoH * n.transpose() + rho * q * vel.transpose();
  jac(ENE, PRE) = gog1 * q;
  return jac;
}

/// d(conservative)/d(primitive) at w; the pseudo-time and dissipation
/// linearizations need it because unknowns are primitive.
template <class S>
Mat5T<S> cons_jacobian_primitive(const Vec5T<S>& w, const GasModel& gas) {
  const S rho = w[RHO];
  const Vec3T<S> vel = w.template segment<3>(VX);
  Mat5T<S> m;
  m.setZero();
  m(RHO, RHO) = S(1);
  for (int d = 0; d < 3; ++d) {
    m(VX + d, RHO) = vel[d];
    m(VX + d, VX + d) = rho;
  }
  m(ENE, RHO) = S(0.5) * vel.squaredNorm();
  m.template block<1, 3>(ENE, VX) = rho * vel.transpose();
  m(ENE, PRE) = S(1.0 / (gas.gamma - 1.0));
  return m;
}

}  // namespace efv

#endif  // EFV_GAS_HPP

// Manufactured solution field w(x) = w0 + dw * exp(e.x), its analytic
// gradients, and the forcing that makes it an exact steady Euler solution.
#ifndef EFV_MMS_HPP
#define EFV_MMS_HPP

#include <cmath>

#include "efv/gas.hpp"
#include "efv/types.hpp"

namespace efv {

/// Exponential manufactured field. Defaults give a smooth subsonic flow with
/// strong variation across the thin z direction of the verification domain.
struct ManufacturedField {
  Vec5 w0{Vec5{1.0, 0.3, 0.2, 0.1, 1.0}};
  Vec5 dw{Vec5{0.1, 0.1, 0.1, 0.1, 0.1}};
  Vec3 exponents{Vec3{0.2, 0.2, 200.0}};
};

template <class S>
S mms_shape(const Vec3T<S>& x, const ManufacturedField& field) {
  using std::exp;
  return exp(field.exponents.cast<S>().dot(x));
}

/// w(x) = w0 + dw * g(x), componentwise.
template <class S>
Vec5T<S> exact_primitive(const Vec3T<S>& x, const ManufacturedField& field) {
  return field.w0.cast<S>() + field.dw.cast<S>() * mms_shape(x, field);
}

/// Row v holds the spatial gradient of primitive variable v:
/// dw_v * e_d * g(x).
template <class S>
Grad53T<S> exact_primitive_gradient(const Vec3T<S>& x, const ManufacturedField& field) {
  const S g = mms_shape(x, field);
  return (field.dw.cast<S>() * g) * field.exponents.cast<S>().transpose();
}

/// Analytic second directional derivative d^2/dt^2 f(w + t*delta) . n at t=0.
/// The directed flux is polynomial (degree 4) in the primitives, so this is a
/// closed-form contraction rather than a finite difference.
template <class S>
Vec5T<S> flux_second_directional(const Vec5T<S>& w, const Vec5T<S>& delta, const Vec3T<S>& n,
                                 const GasModel& gas) {
  const S rho = w[RHO];
  const Vec3T<S> vel = w.template segment<3>(VX);
  const S q = vel.dot(n);
  const S drho = delta[RHO];
  const Vec3T<S> dvel = delta.template segment<3>(VX);
  const S dp = delta[PRE];
  const S dq = dvel.dot(n);
  const S gog1 = S(gas.gamma / (gas.gamma - 1.0));

  Vec5T<S> d2;
  d2[RHO] = S(2) * drho * dq;
  for (int d = 0; d < 3; ++d) {
    d2[VX + d] = S(2) * (drho * dvel[d] * q + drho * vel[d] * dq + rho * dvel[d] * dq);
  }
  d2[ENE] = S(2) * gog1 * dp * dq + dvel.squaredNorm() * rho * q +
            S(2) * vel.dot(dvel) * drho * q + drho * vel.squaredNorm() * dq +
            S(2) * rho * vel.dot(dvel) * dq;
  return d2;
}

/// Forcing s(x) = div F(u(w(x))), assembled by the chain rule
/// s = sum_d (dF_d/dw)(w(x)) . dw/dx_d.
template <class S>
Vec5T<S> forcing(const Vec3T<S>& x, const ManufacturedField& field, const GasModel& gas) {
  const Vec5T<S> w = exact_primitive(x, field);
  const Grad53T<S> gw = exact_primitive_gradient(x, field);
  Vec5T<S> s = Vec5T<S>::Zero();
  for (int d = 0; d < 3; ++d) {
    const Vec3T<S> axis = Vec3T<S>::Unit(d);
    s += flux_jacobian_primitive(w, axis, gas) * gw.col(d);
  }
  return s;
}

/// Analytic gradient of the forcing (row v = grad of s_v). Used as the
/// cross-check alternative to least-squares gradients of nodal s values.
/// Every spatial derivative of this field is proportional to dw * g(x), so the
/// chain rule needs only one second-derivative contraction per direction.
template <class S>
Grad53T<S> forcing_gradient(const Vec3T<S>& x, const ManufacturedField& field,
                            const GasModel& gas) {
  const S g = mms_shape(x, field);
  const Vec5T<S> w = exact_primitive(x, field);
  const Vec5T<S> dw = field.dw.cast<S>();
  const Vec3T<S> c = field.exponents.cast<S>();

  // ds/dg where s = g * sum_d c_d J_d(w0 + g*dw) dw.
  Vec5T<S> ds_dg = Vec5T<S>::Zero();
  for (int d = 0; d < 3; ++d) {
    const Vec3T<S> axis = Vec3T<S>::Unit(d);
    ds_dg += c[d] * (flux_jacobian_primitive(w, axis, gas) * dw +
                     g * flux_second_directional(w, dw, axis, gas));
  }
  // grad g = g * c.
  return (g * ds_dg) * c.transpose();
}

}  // namespace efv

#endif  // EFV_MMS_HPP

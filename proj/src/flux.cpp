#include "efv/flux.hpp"

#include <cmath>
#include <stdexcept>

namespace efv {

namespace {

void require_physical(const Vec5& wl, const Vec5& wr, const char* who) {
  if (!primitive_is_physical(wl) || !primitive_is_physical(wr))
    throw std::domain_error(std::string(who) + ": non-physical input state");
}

double harten_fix(double lambda, double delta) {
  const double mag = std::abs(lambda);
  if (mag >= delta) return mag;
  return 0.5 * (lambda * lambda + delta * delta) / delta;
}

}  // namespace

const char* flux_name(FluxFunction f) {
  switch (f) {
    case FluxFunction::roe: return "roe";
    case FluxFunction::hllc: return "hllc";
    case FluxFunction::ldfss: return "ldfss";
  }
  return "?";
}

FluxFunction parse_flux(const std::string& name) {
  if (name == "roe") return FluxFunction::roe;
  if (name == "hllc") return FluxFunction::hllc;
  if (name == "ldfss") return FluxFunction::ldfss;
  throw std::invalid_argument("unknown flux function: " + name);
}

RoeSplit roe_split(const Vec5& wl, const Vec5& wr, const Vec3& n_hat, const GasModel& gas,
                   double entropy_fix) {
  require_physical(wl, wr, "roe_split");

  const double rho_l = wl[RHO], rho_r = wr[RHO];
  const Vec3 vel_l = wl.segment<3>(VX), vel_r = wr.segment<3>(VX);
  const double p_l = wl[PRE], p_r = wr[PRE];
  const double g1 = gas.gamma - 1.0;
  const double h_l = gas.gamma / g1 * p_l / rho_l + 0.5 * vel_l.squaredNorm();
  const double h_r = gas.gamma / g1 * p_r / rho_r + 0.5 * vel_r.squaredNorm();

  // Roe averages.
  const double ratio = std::sqrt(rho_r / rho_l);
  const double rho = ratio * rho_l;
  const Vec3 vel = (vel_l + ratio * vel_r) / (1.0 + ratio);
  const double h = (h_l + ratio * h_r) / (1.0 + ratio);
  const double a2 = g1 * (h - 0.5 * vel.squaredNorm());
  if (!(a2 > 0.0)) throw std::domain_error("roe_split: non-physical Roe average");
  const double a = std::sqrt(a2);
  const double q = vel.dot(n_hat);

  const double drho = rho_r - rho_l;
  const Vec3 dvel = vel_r - vel_l;
  const double dp = p_r - p_l;
  const double dq = dvel.dot(n_hat);

  const double delta = entropy_fix * a;
  const double lam_minus = harten_fix(q - a, delta);
  const double lam_plus = harten_fix(q + a, delta);
  const double lam_contact = std::abs(q);

  const double alpha_minus = 0.5 * (dp - rho * a * dq) / a2;
  const double alpha_plus = 0.5 * (dp + rho * a * dq) / a2;
  const double alpha_contact = drho - dp / a2;

  Vec5 diss;
  diss[RHO] = lam_minus * alpha_minus + lam_plus * alpha_plus + lam_contact * alpha_contact;
  diss.segment<3>(VX) =
      lam_minus * alpha_minus * (vel - a * n_hat) + lam_plus * alpha_plus * (vel + a * n_hat) +
      lam_contact * (alpha_contact * vel + rho * (dvel - dq * n_hat));
  diss[ENE] = lam_minus * alpha_minus * (h - a * q) + lam_plus * alpha_plus * (h + a * q) +
              lam_contact * (alpha_contact * 0.5 * vel.squaredNorm() +
                             rho * (vel.dot(dvel) - q * dq));

  RoeSplit split;
  split.average = 0.5 * (directed_flux(wl, n_hat, gas) + directed_flux(wr, n_hat, gas));
  split.dissipation = 0.5 * diss;
  return split;
}

Vec5 flux_roe(const Vec5& wl, const Vec5& wr, const Vec3& n_hat, const GasModel& gas,
              double entropy_fix) {
  const RoeSplit split = roe_split(wl, wr, n_hat, gas, entropy_fix);
  return split.average - split.dissipation;
}

Vec5 flux_hllc(const Vec5& wl, const Vec5& wr, const Vec3& n_hat, const GasModel& gas) {
  require_physical(wl, wr, "flux_hllc");

  const double rho_l = wl[RHO], rho_r = wr[RHO];
  const Vec3 vel_l = wl.segment<3>(VX), vel_r = wr.segment<3>(VX);
  const double p_l = wl[PRE], p_r = wr[PRE];
  const double q_l = vel_l.dot(n_hat), q_r = vel_r.dot(n_hat);
  const double a_l = sound_speed(wl, gas), a_r = sound_speed(wr, gas);
  const double g1 = gas.gamma - 1.0;

  // Roe-average wave speed estimates.
  const double ratio = std::sqrt(rho_r / rho_l);
  const Vec3 vel = (vel_l + ratio * vel_r) / (1.0 + ratio);
  const double h_l = gas.gamma / g1 * p_l / rho_l + 0.5 * vel_l.squaredNorm();
  const double h_r = gas.gamma / g1 * p_r / rho_r + 0.5 * vel_r.squaredNorm();
  const double h = (h_l + ratio * h_r) / (1.0 + ratio);
  const double a2 = g1 * (h - 0.5 * vel.squaredNorm());
  if (!(a2 > 0.0)) throw std::domain_error("flux_hllc: non-physical Roe average");
  const double a = std::sqrt(a2);
  const double q = vel.dot(n_hat);

  const double s_l = std::min(q_l - a_l, q - a);
  const double s_r = std::max(q_r + a_r, q + a);

  if (s_l > 0.0) return directed_flux(wl, n_hat, gas);
  if (s_r < 0.0) return directed_flux(wr, n_hat, gas);

  const double ml = rho_l * (s_l - q_l);
  const double mr = rho_r * (s_r - q_r);
  const double s_m = (mr * q_r - ml * q_l + p_l - p_r) / (mr - ml);
  const double p_star = rho_l * (q_l - s_l) * (q_l - s_m) + p_l;

  const GasModel& g = gas;
  auto star_flux = [&](const Vec5& w, double s, double q_side, double p_side) {
    const Vec5 u = prim_to_cons(w, g);
    const double factor = w[RHO] * (s - q_side);
    const double inv = 1.0 / (s - s_m);
    Vec5 u_star;
    u_star[RHO] = factor * inv;
    u_star.segment<3>(VX) = (factor * w.segment<3>(VX) + (p_star - p_side) * n_hat) * inv;
    u_star[ENE] = ((s - q_side) * u[ENE] - p_side * q_side + p_star * s_m) * inv;
    return Vec5(directed_flux(w, n_hat, g) + s * (u_star - u));
  };

  if (s_m >= 0.0) return star_flux(wl, s_l, q_l, p_l);
  return star_flux(wr, s_r, q_r, p_r);
}

Vec5 flux_ldfss(const Vec5& wl, const Vec5& wr, const Vec3& n_hat, const GasModel& gas) {
  require_physical(wl, wr, "flux_ldfss");

  const double rho_l = wl[RHO], rho_r = wr[RHO];
  const Vec3 vel_l = wl.segment<3>(VX), vel_r = wr.segment<3>(VX);
  const double p_l = wl[PRE], p_r = wr[PRE];
  const double q_l = vel_l.dot(n_hat), q_r = vel_r.dot(n_hat);
  const double g1 = gas.gamma - 1.0;
  const double h_l = gas.gamma / g1 * p_l / rho_l + 0.5 * vel_l.squaredNorm();
  const double h_r = gas.gamma / g1 * p_r / rho_r + 0.5 * vel_r.squaredNorm();

  const double a_half = 0.5 * (sound_speed(wl, gas) + sound_speed(wr, gas));
  const double m_l = q_l / a_half;
  const double m_r = q_r / a_half;

  const bool sub_l = std::abs(m_l) < 1.0;
  const bool sub_r = std::abs(m_r) < 1.0;

  // van Leer Mach splittings (subsonic branches).
  const double m_plus = 0.25 * (m_l + 1.0) * (m_l + 1.0);
  const double m_minus = -0.25 * (m_r - 1.0) * (m_r - 1.0);

  // Interface Mach correction, active only when both sides are subsonic;
  // removes the flux-splitting diffusion at contacts.
  double m_half = 0.0;
  if (sub_l && sub_r) {
    const double m_bar = std::sqrt(0.5 * (m_l * m_l + m_r * m_r));
    m_half = 0.25 * (m_bar - 1.0) * (m_bar - 1.0);
  }

  double c_plus, c_minus;
  if (sub_l)
    c_plus = m_plus - m_half;
  else
    c_plus = m_l > 0.0 ? m_l : 0.0;
  if (sub_r)
    c_minus = m_minus + m_half;
  else
    c_minus = m_r < 0.0 ? m_r : 0.0;

  // van Leer pressure splittings.
  double d_plus, d_minus;
  if (sub_l)
    d_plus = 0.25 * (m_l + 1.0) * (m_l + 1.0) * (2.0 - m_l);
  else
    d_plus = m_l > 0.0 ? 1.0 : 0.0;
  if (sub_r)
    d_minus = 0.25 * (m_r - 1.0) * (m_r - 1.0) * (2.0 + m_r);
  else
    d_minus = m_r < 0.0 ? 1.0 : 0.0;

  Vec5 psi_l, psi_r;
  psi_l << 1.0, vel_l[0], vel_l[1], vel_l[2], h_l;
  psi_r << 1.0, vel_r[0], vel_r[1], vel_r[2], h_r;

  Vec5 flux = a_half * (rho_l * c_plus * psi_l + rho_r * c_minus * psi_r);
  flux.segment<3>(VX) += (d_plus * p_l + d_minus * p_r) * n_hat;
  return flux;
}

Vec5 numerical_flux(FluxFunction id, const Vec5& wl, const Vec5& wr, const Vec3& n_hat,
                    const GasModel& gas, double entropy_fix) {
  switch (id) {
    case FluxFunction::roe: return flux_roe(wl, wr, n_hat, gas, entropy_fix);
    case FluxFunction::hllc: return flux_hllc(wl, wr, n_hat, gas);
    case FluxFunction::ldfss: return flux_ldfss(wl, wr, n_hat, gas);
  }
  throw std::logic_error("numerical_flux: bad id");
}

}  // namespace efv

#include "efv/residual.hpp"

#include <cmath>
#include <stdexcept>

namespace efv {

const char* scheme_name(SchemeVariant v) {
  switch (v) {
    case SchemeVariant::second: return "2nd";
    case SchemeVariant::third_fr: return "3rd-fr";
    case SchemeVariant::third_fc: return "3rd-fc";
  }
  return "?";
}

SchemeVariant parse_scheme(const std::string& name) {
  if (name == "2nd") return SchemeVariant::second;
  if (name == "3rd-fr") return SchemeVariant::third_fr;
  if (name == "3rd-fc") return SchemeVariant::third_fc;
  throw std::invalid_argument("unknown scheme variant: " + name);
}

void SchemeConfig::validate() const {
  if (variant == SchemeVariant::third_fc && kappa != 0.5)
    throw std::invalid_argument("third_fc requires kappa = 1/2");
  if (variant == SchemeVariant::third_fr && flux != FluxFunction::roe)
    throw std::invalid_argument("third_fr is only defined for the Roe flux");
}

std::pair<Vec5, Vec5> umuscl_extrapolate(const Vec5& wj, const Vec5& wk, const Grad53& gradj,
                                         const Grad53& gradk, const Vec3& dx, double kappa) {
  const Vec5 central = 0.5 * (wj + wk);
  const Vec5 wl = kappa * central + (1.0 - kappa) * (wj + 0.5 * (gradj * dx));
  const Vec5 wr = kappa * central + (1.0 - kappa) * (wk - 0.5 * (gradk * dx));
  return {wl, wr};
}

std::pair<Vec5, Vec5> extrapolated_fluxes(const Vec5& wj, const Vec5& wk, const Grad53& gradj,
                                          const Grad53& gradk, const Vec3& dx,
                                          const Vec3& n_hat, const GasModel& gas) {
  const Vec5 fl = directed_flux(wj, n_hat, gas) +
                  0.5 * (flux_jacobian_primitive(wj, n_hat, gas) * (gradj * dx));
  const Vec5 fr = directed_flux(wk, n_hat, gas) -
                  0.5 * (flux_jacobian_primitive(wk, n_hat, gas) * (gradk * dx));
  return {fl, fr};
}

Vec5 flux_correction(const Vec5& wj, const Vec5& wk, const Grad53& gradj, const Grad53& gradk,
                     const Vec3& dx, const Vec3& n_hat, const GasModel& gas) {
  return 0.125 * (flux_jacobian_primitive(wj, n_hat, gas) * (gradj * dx) -
                  flux_jacobian_primitive(wk, n_hat, gas) * (gradk * dx));
}

Vec5 source_quadrature_edge(const Vec5& sj, const Grad53& grad_sj, const Vec5& sk,
                            const Vec3& dx, double dx_dot_n) {
  return (dx_dot_n / 60.0) * (13.0 * sj + 3.0 * (grad_sj * dx) - 3.0 * sk);
}

ResidualAssembler::ResidualAssembler(const MeshTopology& mesh, const DualMetrics& metrics,
                                     const GradientStencil& stencil, const SchemeConfig& config,
                                     const GasModel& gas, const ManufacturedField& field)
    : mesh_(mesh), metrics_(metrics), stencil_(stencil), config_(config), gas_(gas),
      field_(field) {
  config_.validate();

  const int nnodes = mesh_.num_nodes();
  source_.resize(nnodes);
  for (int j = 0; j < nnodes; ++j) source_[j] = forcing<double>(mesh_.node_coords[j], field_, gas_);

  if (config_.analytic_source_gradient) {
    source_grad_.resize(nnodes);
    for (int j = 0; j < nnodes; ++j)
      source_grad_[j] = forcing_gradient<double>(mesh_.node_coords[j], field_, gas_);
  } else {
    source_grad_ = compute_gradients5(stencil_, source_);
  }

  exact_node_.assign(nnodes, Vec5::Zero());
  for (int j = 0; j < nnodes; ++j)
    if (metrics_.is_boundary_node(j))
      exact_node_[j] = exact_primitive<double>(mesh_.node_coords[j], field_);

  exact_mid_.resize(mesh_.boundary_tris.size());
  for (std::size_t t = 0; t < mesh_.boundary_tris.size(); ++t) {
    const auto& tri = mesh_.boundary_tris[t];
    for (int v = 0; v < 3; ++v) {
      const Vec3 mid =
          0.5 * (mesh_.node_coords[tri[v]] + mesh_.node_coords[tri[(v + 1) % 3]]);
      exact_mid_[t][v] = exact_primitive<double>(mid, field_);
    }
  }
}

ResidualField ResidualAssembler::assemble(const std::vector<Vec5>& states) const {
  const int nnodes = mesh_.num_nodes();
  const bool third_order = config_.variant != SchemeVariant::second;

  ResidualField out;
  out.res.assign(nnodes, Vec5::Zero());

  const std::vector<Grad53> grads = compute_gradients5(stencil_, states);

  for (int e = 0; e < mesh_.num_edges(); ++e) {
    const int j = mesh_.edges[e][0];
    const int k = mesh_.edges[e][1];
    const double mag = metrics_.edge_area_mag[e];
    const Vec3 n_hat = metrics_.edge_directed_area[e] / mag;
    const Vec3 dx = mesh_.node_coords[k] - mesh_.node_coords[j];

    const auto [wl, wr] =
        umuscl_extrapolate(states[j], states[k], grads[j], grads[k], dx, config_.kappa);
    if (!primitive_is_physical(wl) || !primitive_is_physical(wr)) {
      out.physical = false;
      break;
    }

    Vec5 phi;
    switch (config_.variant) {
      case SchemeVariant::second:
        phi = numerical_flux(config_.flux, wl, wr, n_hat, gas_, config_.roe_entropy_fix);
        break;
      case SchemeVariant::third_fr: {
        const auto [fl, fr] =
            extrapolated_fluxes(states[j], states[k], grads[j], grads[k], dx, n_hat, gas_);
        const RoeSplit split = roe_split(wl, wr, n_hat, gas_, config_.roe_entropy_fix);
        phi = 0.5 * (fl + fr) - split.dissipation;
        break;
      }
      case SchemeVariant::third_fc:
        phi = numerical_flux(config_.flux, wl, wr, n_hat, gas_, config_.roe_entropy_fix) +
              flux_correction(states[j], states[k], grads[j], grads[k], dx, n_hat, gas_);
        break;
    }

    out.res[j] += mag * phi;
    out.res[k] -= mag * phi;

    if (third_order) {
      const double dxn = dx.dot(metrics_.edge_directed_area[e]);
      out.res[j] -= source_quadrature_edge(source_[j], source_grad_[j], source_[k], dx, dxn);
      out.res[k] -=
          source_quadrature_edge(source_[k], source_grad_[k], source_[j], -dx, dxn);
    }
  }

  if (out.physical && !third_order)
    for (int j = 0; j < nnodes; ++j) out.res[j] -= metrics_.dual_volume[j] * source_[j];

  if (out.physical) {
    for (std::size_t t = 0; t < mesh_.boundary_tris.size() && out.physical; ++t) {
      const auto& tri = mesh_.boundary_tris[t];
      const Vec3& area = metrics_.boundary_tri_area[t];
      const double mag = area.norm();
      const Vec3 n_hat = area / mag;

      for (int v = 0; v < 3; ++v) {
        const int j = tri[v];
        const Vec5 phi_node = numerical_flux(config_.flux, states[j], exact_node_[j], n_hat,
                                             gas_, config_.roe_entropy_fix);
        if (config_.lumped_boundary) {
          out.res[j] += (mag / 3.0) * phi_node;
          continue;
        }

        // Quadratic extrapolation (kappa = 1/2) of the left state to the two
        // adjacent edge midpoints, regardless of the scheme's kappa; the
        // right state is the exact solution at the midpoint.
        Vec5 phi_mid[2];
        bool ok = true;
        const int other[2] = {(v + 1) % 3, (v + 2) % 3};
        const int mid_slot[2] = {v, (v + 2) % 3};
        for (int mside = 0; mside < 2; ++mside) {
          const int a = tri[other[mside]];
          const Vec3 dxa = mesh_.node_coords[a] - mesh_.node_coords[j];
          const Vec5 wl =
              0.25 * (states[j] + states[a]) + 0.5 * (states[j] + 0.5 * (grads[j] * dxa));
          if (!primitive_is_physical(wl)) {
            ok = false;
            break;
          }
          phi_mid[mside] = numerical_flux(config_.flux, wl, exact_mid_[t][mid_slot[mside]],
                                          n_hat, gas_, config_.roe_entropy_fix);
        }
        if (!ok) {
          out.physical = false;
          break;
        }
        out.res[j] += (mag / 3.0) * (6.0 * phi_node + phi_mid[0] + phi_mid[1]) / 8.0;
      }
    }
  }

  out.l1.setZero();
  out.linf.setZero();
  if (out.physical) {
    KahanSum acc[5];
    for (const Vec5& r : out.res)
      for (int c = 0; c < 5; ++c) {
        acc[c].add(std::abs(r[c]));
        out.linf[c] = std::max(out.linf[c], std::abs(r[c]));
      }
    for (int c = 0; c < 5; ++c) out.l1[c] = acc[c].value() / double(nnodes);
  }
  return out;
}

std::vector<Vec5> ResidualAssembler::assemble_first_order(const std::vector<Vec5>& states) const {
  const int nnodes = mesh_.num_nodes();
  std::vector<Vec5> res(nnodes, Vec5::Zero());

  for (int e = 0; e < mesh_.num_edges(); ++e) {
    const int j = mesh_.edges[e][0];
    const int k = mesh_.edges[e][1];
    const double mag = metrics_.edge_area_mag[e];
    const Vec3 n_hat = metrics_.edge_directed_area[e] / mag;

    const double lam = std::max(
        std::abs(states[j].segment<3>(VX).dot(n_hat)) + sound_speed(states[j], gas_),
        std::abs(states[k].segment<3>(VX).dot(n_hat)) + sound_speed(states[k], gas_));
    const Vec5 phi =
        0.5 * (directed_flux(states[j], n_hat, gas_) + directed_flux(states[k], n_hat, gas_)) -
        0.5 * lam * (prim_to_cons(states[k], gas_) - prim_to_cons(states[j], gas_));
    res[j] += mag * phi;
    res[k] -= mag * phi;
  }

  for (std::size_t t = 0; t < mesh_.boundary_tris.size(); ++t) {
    const auto& tri = mesh_.boundary_tris[t];
    const Vec3& area = metrics_.boundary_tri_area[t];
    const double mag = area.norm();
    const Vec3 n_hat = area / mag;
    for (int v = 0; v < 3; ++v) {
      const int j = tri[v];
      const Vec5& wb = exact_node_[j];
      const double lam =
          std::max(std::abs(states[j].segment<3>(VX).dot(n_hat)) + sound_speed(states[j], gas_),
                   std::abs(wb.segment<3>(VX).dot(n_hat)) + sound_speed(wb, gas_));
      const Vec5 phi =
          0.5 * (directed_flux(states[j], n_hat, gas_) + directed_flux(wb, n_hat, gas_)) -
          0.5 * lam * (prim_to_cons(wb, gas_) - prim_to_cons(states[j], gas_));
      res[j] += (mag / 3.0) * phi;
    }
  }
  return res;
}

}  // namespace efv

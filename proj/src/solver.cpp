#include "efv/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace efv {

namespace {

/// d(|vel.n| + a)/d(rho,u,v,w,p) at w.
Vec5 spectral_radius_gradient(const Vec5& w, const Vec3& n_hat, const GasModel& gas) {
  const double q = w.segment<3>(VX).dot(n_hat);
  const double a = sound_speed(w, gas);
  Vec5 g;
  g[RHO] = -0.5 * a / w[RHO];
  g.segment<3>(VX) = (q >= 0.0 ? 1.0 : -1.0) * n_hat;
  g[PRE] = 0.5 * a / w[PRE];
  return g;
}

struct EdgeLinearization {
  Mat5 dphi_dwl;
  Mat5 dphi_dwr;
};

/// Exact primitive-variable Jacobian of the Rusanov-type first-order flux
/// phi = (f_l + f_r)/2 - lam (u_r - u_l)/2 with lam = max side (|q| + a).
EdgeLinearization linearize_first_order_flux(const Vec5& wl, const Vec5& wr, const Vec3& n_hat,
                                             const GasModel& gas) {
  const double lam_l = std::abs(wl.segment<3>(VX).dot(n_hat)) + sound_speed(wl, gas);
  const double lam_r = std::abs(wr.segment<3>(VX).dot(n_hat)) + sound_speed(wr, gas);
  const double lam = std::max(lam_l, lam_r);
  const Vec5 du = prim_to_cons(wr, gas) - prim_to_cons(wl, gas);

  EdgeLinearization lin;
  lin.dphi_dwl = 0.5 * flux_jacobian_primitive(wl, n_hat, gas) +
                 0.5 * lam * cons_jacobian_primitive(wl, gas);
  lin.dphi_dwr = 0.5 * flux_jacobian_primitive(wr, n_hat, gas) -
                 0.5 * lam * cons_jacobian_primitive(wr, gas);
  if (lam_l >= lam_r)
    lin.dphi_dwl -= 0.5 * du * spectral_radius_gradient(wl, n_hat, gas).transpose();
  else
    lin.dphi_dwr -= 0.5 * du * spectral_radius_gradient(wr, n_hat, gas).transpose();
  return lin;
}

}  // namespace

std::vector<Vec5> initialize_states(const MeshTopology& mesh, const ManufacturedField& field,
                                    const SolverConfig& config) {
  std::vector<Vec5> states(mesh.num_nodes());
  for (int j = 0; j < mesh.num_nodes(); ++j) {
    const Vec5 exact = exact_primitive<double>(mesh.node_coords[j], field);
    SplitRng rng(mix_seed(config.seed, 0xA11CEull + std::uint64_t(j)));
    Vec5 w;
    for (int attempt = 0; attempt < 100; ++attempt) {
      for (int c = 0; c < 5; ++c)
        w[c] = exact[c] * (1.0 + config.init_perturbation * rng.next_symmetric());
      if (primitive_is_physical(w)) break;
    }
    if (!primitive_is_physical(w))
      throw std::runtime_error("initialize_states: could not draw a physical state");
    states[j] = w;
  }
  return states;
}

FirstOrderJacobian build_first_order_jacobian(const ResidualAssembler& assembler,
                                              const std::vector<Vec5>& states) {
  const MeshTopology& mesh = assembler.mesh();
  const DualMetrics& metrics = assembler.metrics();
  const GasModel& gas = assembler.gas();

  FirstOrderJacobian jac;
  jac.diag.assign(mesh.num_nodes(), Mat5::Zero());
  jac.off_jk.assign(mesh.num_edges(), Mat5::Zero());
  jac.off_kj.assign(mesh.num_edges(), Mat5::Zero());
  jac.time_scale.assign(mesh.num_nodes(), 0.0);

  for (int e = 0; e < mesh.num_edges(); ++e) {
    const int j = mesh.edges[e][0];
    const int k = mesh.edges[e][1];
    const double mag = metrics.edge_area_mag[e];
    const Vec3 n_hat = metrics.edge_directed_area[e] / mag;

    const EdgeLinearization lin = linearize_first_order_flux(states[j], states[k], n_hat, gas);
    jac.diag[j] += mag * lin.dphi_dwl;
    jac.off_jk[e] = mag * lin.dphi_dwr;
    jac.diag[k] -= mag * lin.dphi_dwr;
    jac.off_kj[e] = -mag * lin.dphi_dwl;

    jac.time_scale[j] += mag;
    jac.time_scale[k] += mag;
  }

  for (std::size_t t = 0; t < mesh.boundary_tris.size(); ++t) {
    const Vec3& area = metrics.boundary_tri_area[t];
    const double mag = area.norm();
    const Vec3 n_hat = area / mag;
    for (int v = 0; v < 3; ++v) {
      const int j = mesh.boundary_tris[t][v];
      const Vec5& wb = assembler.exact_boundary_state(j);
      const EdgeLinearization lin = linearize_first_order_flux(states[j], wb, n_hat, gas);
      jac.diag[j] += (mag / 3.0) * lin.dphi_dwl;
      jac.time_scale[j] += mag / 3.0;
    }
  }

  for (int j = 0; j < mesh.num_nodes(); ++j) {
    const double lam =
        states[j].segment<3>(VX).norm() + sound_speed(states[j], assembler.gas());
    jac.time_scale[j] *= 0.5 * lam;
  }
  return jac;
}

SolveReport solve(const ResidualAssembler& assembler, const SolverConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const MeshTopology& mesh = assembler.mesh();
  const GasModel& gas = assembler.gas();
  const int nnodes = mesh.num_nodes();

  SolveReport report;
  report.states = initialize_states(mesh, assembler.field(), config);

  ResidualField current = assembler.assemble(report.states);
  if (!current.physical)
    throw std::runtime_error("solve: non-physical residual at initialization");
  report.initial_l1 = current.l1;
  report.history.push_back({0, current.l1, config.cfl_start});

  const Vec5 target =
      report.initial_l1 * std::pow(10.0, -config.convergence_drop);
  auto is_converged = [&](const Vec5& l1) {
    for (int c = 0; c < 5; ++c)
      if (l1[c] > config.absolute_floor && l1[c] > target[c]) return false;
    return true;
  };

  double cfl = config.cfl_start;
  bool converged = is_converged(current.l1);
  int iter = 0;

  std::vector<Eigen::PartialPivLU<Mat5>> lu(nnodes);
  std::vector<Vec5> delta(nnodes), trial(nnodes);

  while (!converged && iter < config.max_nonlinear_iters) {
    ++iter;
    const FirstOrderJacobian jac = build_first_order_jacobian(assembler, report.states);

    bool accepted = false;
    int rejects = 0;
    while (!accepted) {
      // Pseudo-time augmented diagonal at the current CFL.
      for (int j = 0; j < nnodes; ++j)
        lu[j].compute(jac.diag[j] + (jac.time_scale[j] / cfl) *
                                        cons_jacobian_primitive(report.states[j], gas));

      // Block symmetric Gauss-Seidel on (Jac + V/dtau) delta = -Res.
      for (auto& d : delta) d.setZero();
      for (int sweep = 0; sweep < config.linear_sweeps; ++sweep) {
        for (int j = 0; j < nnodes; ++j) {
          Vec5 rhs = -current.res[j];
          for (const IncidentEdge& ie : mesh.node_edges[j]) {
            const auto& edge = mesh.edges[ie.edge];
            if (ie.sign > 0)
              rhs -= jac.off_jk[ie.edge] * delta[edge[1]];
            else
              rhs -= jac.off_kj[ie.edge] * delta[edge[0]];
          }
          delta[j] = lu[j].solve(rhs);
        }
        for (int j = nnodes - 1; j >= 0; --j) {
          Vec5 rhs = -current.res[j];
          for (const IncidentEdge& ie : mesh.node_edges[j]) {
            const auto& edge = mesh.edges[ie.edge];
            if (ie.sign > 0)
              rhs -= jac.off_jk[ie.edge] * delta[edge[1]];
            else
              rhs -= jac.off_kj[ie.edge] * delta[edge[0]];
          }
          delta[j] = lu[j].solve(rhs);
        }
      }

      bool physical = true;
      for (int j = 0; j < nnodes; ++j) {
        trial[j] = report.states[j] + delta[j];
        if (!primitive_is_physical(trial[j])) {
          physical = false;
          break;
        }
      }

      ResidualField next;
      if (physical) {
        next = assembler.assemble(trial);
        physical = next.physical;
      }

      if (physical) {
        accepted = true;
        report.states.swap(trial);
        current = std::move(next);
        cfl = std::min(cfl * config.cfl_growth, config.cfl_max);
      } else {
        cfl *= 0.5;
        if (++rejects > 60) break;
      }
    }
    if (!accepted) break;  // CFL collapsed; report non-convergence

    report.history.push_back({iter, current.l1, cfl});
    converged = is_converged(current.l1);
  }

  report.converged = converged;
  report.iterations = iter;
  report.final_l1 = current.l1;
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  if (!config.history_path.empty()) {
    std::FILE* fp = std::fopen(config.history_path.c_str(), "w");
    if (!fp) throw std::runtime_error("solve: cannot open " + config.history_path);
    std::fprintf(fp, "iteration,res_rho,res_mx,res_my,res_mz,res_e,cfl\n");
    for (const HistoryRow& row : report.history)
      std::fprintf(fp, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", row.iteration, row.l1[0],
                   row.l1[1], row.l1[2], row.l1[3], row.l1[4], row.cfl);
    std::fclose(fp);
  }
  return report;
}

}  // namespace efv

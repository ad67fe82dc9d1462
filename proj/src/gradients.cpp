#include "efv/gradients.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace efv {

namespace {

constexpr int kNumMonomials = 9;   // 3 linear + 6 quadratic
constexpr int kTargetStencil = 12; // buffer above the 9-unknown minimum

Eigen::Matrix<double, 1, kNumMonomials> monomial_row(const Vec3& t) {
  Eigen::Matrix<double, 1, kNumMonomials> row;
  row << t[0], t[1], t[2], t[0] * t[0], t[1] * t[1], t[2] * t[2], t[0] * t[1],
      t[1] * t[2], t[2] * t[0];
  return row;
}

}  // namespace

GradientStencil build_stencils(const MeshTopology& mesh) {
  const int nnodes = mesh.num_nodes();
  GradientStencil st;
  st.neighbors.resize(nnodes);
  st.gradient_rows.resize(nnodes);

  // First ring from edges.
  std::vector<std::vector<int>> ring1(nnodes);
  for (const auto& e : mesh.edges) {
    ring1[e[0]].push_back(e[1]);
    ring1[e[1]].push_back(e[0]);
  }
  for (auto& r : ring1) std::sort(r.begin(), r.end());

  std::vector<char> mark(nnodes, 0);
  for (int j = 0; j < nnodes; ++j) {
    std::vector<int>& nbrs = st.neighbors[j];
    nbrs = ring1[j];
    if (int(nbrs.size()) < kTargetStencil) {
      // Augment with the second ring.
      mark[j] = 1;
      for (int k : nbrs) mark[k] = 1;
      std::vector<int> grown = nbrs;
      for (int k : nbrs)
        for (int k2 : ring1[k])
          if (!mark[k2]) {
            mark[k2] = 1;
            grown.push_back(k2);
          }
      mark[j] = 0;
      for (int k : grown) mark[k] = 0;
      std::sort(grown.begin(), grown.end());
      nbrs = std::move(grown);
    }
    if (int(nbrs.size()) < kNumMonomials)
      throw std::runtime_error("build_stencils: node " + std::to_string(j) +
                               " has fewer than 9 stencil members");

    const int m = int(nbrs.size());
    const Vec3& xj = mesh.node_coords[j];

    // Per-axis extents for local anisotropic scaling.
    Vec3 extent = Vec3::Zero();
    for (int k : nbrs)
      extent = extent.cwiseMax((mesh.node_coords[k] - xj).cwiseAbs());
    for (int d = 0; d < 3; ++d)
      if (!(extent[d] > 0.0))
        throw std::runtime_error("build_stencils: node " + std::to_string(j) +
                                 " has a degenerate (planar) stencil");

    Eigen::Matrix<double, Eigen::Dynamic, kNumMonomials> a(m, kNumMonomials);
    Eigen::VectorXd weight(m);
    for (int i = 0; i < m; ++i) {
      const Vec3 t = (mesh.node_coords[nbrs[i]] - xj).cwiseQuotient(extent);
      weight[i] = 1.0 / t.norm();
      a.row(i) = weight[i] * monomial_row(t);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < kNumMonomials)
      throw std::runtime_error("build_stencils: rank-deficient stencil at node " +
                               std::to_string(j));

    // cond2(A)^2 = condition of the normal system, from the R factor.
    const Eigen::MatrixXd r_factor =
        qr.matrixR().topRows(kNumMonomials).template triangularView<Eigen::Upper>();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r_factor);
    const double cond = svd.singularValues()(0) / svd.singularValues()(kNumMonomials - 1);
    st.max_normal_condition = std::max(st.max_normal_condition, cond * cond);

    // Pseudo-inverse rows for the three linear coefficients, folded with the
    // row weights and unscaled back to physical coordinates.
    Eigen::MatrixXd pinv = qr.solve(Eigen::MatrixXd::Identity(m, m));
    Eigen::Matrix<double, 3, Eigen::Dynamic> rows = pinv.topRows(3);
    for (int i = 0; i < m; ++i) rows.col(i) *= weight[i];
    for (int d = 0; d < 3; ++d) rows.row(d) /= extent[d];
    st.gradient_rows[j] = std::move(rows);
  }
  return st;
}

std::vector<Vec3> compute_gradients(const GradientStencil& stencil,
                                    const std::vector<double>& field) {
  const int nnodes = int(stencil.neighbors.size());
  std::vector<Vec3> grad(nnodes);
  Eigen::VectorXd delta;
  for (int j = 0; j < nnodes; ++j) {
    const auto& nbrs = stencil.neighbors[j];
    delta.resize(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) delta[i] = field[nbrs[i]] - field[j];
    grad[j] = stencil.gradient_rows[j] * delta;
  }
  return grad;
}

std::vector<Grad53> compute_gradients5(const GradientStencil& stencil,
                                       const std::vector<Vec5>& field) {
  const int nnodes = int(stencil.neighbors.size());
  std::vector<Grad53> grad(nnodes);
  Eigen::Matrix<double, 5, Eigen::Dynamic> delta;
  for (int j = 0; j < nnodes; ++j) {
    const auto& nbrs = stencil.neighbors[j];
    delta.resize(5, nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) delta.col(i) = field[nbrs[i]] - field[j];
    grad[j] = delta * stencil.gradient_rows[j].transpose();
  }
  return grad;
}

}  // namespace efv

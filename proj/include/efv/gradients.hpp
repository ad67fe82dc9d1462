// Quadratically exact nodal gradients from a weighted quadratic least-squares
// fit over edge neighbors augmented with neighbors-of-neighbors.
//
// The fit at node j uses locally scaled offsets t = (dx/Lx, dy/Ly, dz/Lz)
// (L = per-axis stencil extent, which keeps the 1000:1 domain well
// conditioned), monomials {t, t^2 terms, cross terms} with no constant, and
// inverse scaled-distance weights. Only the pseudo-inverse rows of the three
// linear coefficients are kept, so applying the operator is one small dense
// product per node and is exactly linear in the nodal values.
#ifndef EFV_GRADIENTS_HPP
#define EFV_GRADIENTS_HPP

#include <vector>

#include "efv/mesh.hpp"
#include "efv/types.hpp"

namespace efv {

struct GradientStencil {
  std::vector<std::vector<int>> neighbors;  // per node, ascending ids
  // Per node: 3 x m map from (f_neighbor - f_node) to the gradient in
  // physical coordinates.
  std::vector<Eigen::Matrix<double, 3, Eigen::Dynamic>> gradient_rows;
  double max_normal_condition = 0.0;  // max over nodes of cond2(A)^2

  int stencil_size(int j) const { return static_cast<int>(neighbors[j].size()); }
};

/// Builds stencils and least-squares factors for every node. Throws
/// std::runtime_error (with the node id) if a stencil is rank deficient or
/// cannot reach the minimum size.
GradientStencil build_stencils(const MeshTopology& mesh);

/// Gradient of one nodal scalar field at every node.
std::vector<Vec3> compute_gradients(const GradientStencil& stencil,
                                    const std::vector<double>& field);

/// Gradients of all five components of a nodal 5-vector field; row v of the
/// result at node j is the gradient of component v.
std::vector<Grad53> compute_gradients5(const GradientStencil& stencil,
                                       const std::vector<Vec5>& field);

}  // namespace efv

#endif  // EFV_GRADIENTS_HPP

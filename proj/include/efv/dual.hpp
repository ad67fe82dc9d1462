// Median-dual metrics: lumped directed-area vectors per edge, dual volumes
// per node, and boundary face data for the weak boundary closure.
//
// For every tetrahedron and each of its six edges, the dual face inside the
// element is the quadrilateral (edge midpoint, adjacent-face centroid,
// element centroid, other-face centroid); its vector area accumulates into
// the edge's lumped directed area n_jk, oriented j -> k. Dual volumes take a
// quarter of each incident element. Accumulation runs in element-index order
// so results are bitwise reproducible.
#ifndef EFV_DUAL_HPP
#define EFV_DUAL_HPP

#include <vector>

#include "efv/mesh.hpp"
#include "efv/types.hpp"

namespace efv {

struct DualMetrics {
  std::vector<Vec3> edge_directed_area;   // n_jk, oriented edge tail -> head
  std::vector<double> edge_area_mag;      // |n_jk|
  std::vector<double> dual_volume;        // V_j > 0
  std::vector<Vec3> boundary_tri_area;    // outward directed area per boundary tri
  std::vector<std::vector<int>> node_boundary_tris;  // incident boundary tris per node

  bool is_boundary_node(int j) const { return !node_boundary_tris[j].empty(); }
};

/// Throws std::runtime_error on degenerate (non-positive volume) elements.
DualMetrics compute_dual_metrics(const MeshTopology& mesh);

}  // namespace efv

#endif  // EFV_DUAL_HPP

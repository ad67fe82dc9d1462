#include "efv/dual.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace efv {

namespace {

// Local edges (a,b) with the remaining vertices (c,d) ordered so that
// (a,b,c,d) is an even permutation of (0,1,2,3); for a positively oriented
// tet this makes the dual-face area vector point from a to b.
constexpr int kTetEdges[6][4] = {
    {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {1, 2, 0, 3}, {1, 3, 2, 0}, {2, 3, 0, 1},
};

}  // namespace

DualMetrics compute_dual_metrics(const MeshTopology& mesh) {
  DualMetrics metrics;
  metrics.edge_directed_area.assign(mesh.num_edges(), Vec3::Zero());
  metrics.dual_volume.assign(mesh.num_nodes(), 0.0);

  // Edge id lookup.
  std::unordered_map<std::uint64_t, int> edge_id;
  edge_id.reserve(mesh.edges.size() * 2);
  const std::uint64_t stride = std::uint64_t(mesh.num_nodes()) + 1;
  for (int e = 0; e < mesh.num_edges(); ++e)
    edge_id.emplace(std::uint64_t(mesh.edges[e][0]) * stride + mesh.edges[e][1], e);

  for (const auto& tet : mesh.tets) {
    const Vec3& x0 = mesh.node_coords[tet[0]];
    const Vec3& x1 = mesh.node_coords[tet[1]];
    const Vec3& x2 = mesh.node_coords[tet[2]];
    const Vec3& x3 = mesh.node_coords[tet[3]];
    const double vol = tet_volume(x0, x1, x2, x3);
    if (!(vol > 0.0)) throw std::runtime_error("compute_dual_metrics: degenerate tet");

    const Vec3 centroid = 0.25 * (x0 + x1 + x2 + x3);
    for (int v = 0; v < 4; ++v) metrics.dual_volume[tet[v]] += 0.25 * vol;

    for (const auto& le : kTetEdges) {
      const int a = tet[le[0]], b = tet[le[1]], c = tet[le[2]], d = tet[le[3]];
      const Vec3& xa = mesh.node_coords[a];
      const Vec3& xb = mesh.node_coords[b];
      const Vec3 mid = 0.5 * (xa + xb);
      const Vec3 gc = (xa + xb + mesh.node_coords[c]) / 3.0;  // centroid of face {a,b,c}
      const Vec3 gd = (xa + xb + mesh.node_coords[d]) / 3.0;  // centroid of face {a,b,d}
      // Vector area of the skew quad (mid, gc, centroid, gd): half the cross
      // product of its diagonals. Points a -> b by the even-permutation setup.
      const Vec3 area = 0.5 * (centroid - mid).cross(gd - gc);

      const int lo = std::min(a, b), hi = std::max(a, b);
      const int e = edge_id.at(std::uint64_t(lo) * stride + hi);
      metrics.edge_directed_area[e] += (a < b) ? area : Vec3(-area);
    }
  }

  metrics.edge_area_mag.resize(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e)
    metrics.edge_area_mag[e] = metrics.edge_directed_area[e].norm();

  metrics.boundary_tri_area.resize(mesh.boundary_tris.size());
  metrics.node_boundary_tris.assign(mesh.num_nodes(), {});
  for (std::size_t t = 0; t < mesh.boundary_tris.size(); ++t) {
    const auto& tri = mesh.boundary_tris[t];
    const Vec3& pa = mesh.node_coords[tri[0]];
    metrics.boundary_tri_area[t] =
        0.5 * (mesh.node_coords[tri[1]] - pa).cross(mesh.node_coords[tri[2]] - pa);
    for (int v = 0; v < 3; ++v) metrics.node_boundary_tris[tri[v]].push_back(int(t));
  }
  return metrics;
}

}  // namespace efv

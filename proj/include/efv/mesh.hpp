// Irregular tetrahedral grid generation for the verification studies, plus a
// plain-text mesh exchange format.
//
// Grids are n x n x n node lattices over an axis-aligned box. Interior nodes
// are randomly displaced (per-axis, proportional to the local spacing), nodes
// on boundary faces move only tangentially, and nodes on domain edges and
// corners stay put. Each hexahedral cell is split into six tetrahedra sharing
// a main diagonal; the diagonal direction varies pseudo-randomly from cell to
// cell under a conformity constraint so that neighboring cells agree on the
// shared face diagonal.
#ifndef EFV_MESH_HPP
#define EFV_MESH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "efv/types.hpp"

namespace efv {

struct GridSpec {
  int n = 16;                           // nodes per direction
  Vec3 lo{Vec3{0.0, 0.0, 0.0}};         // box corner
  Vec3 hi{Vec3{1.0, 1.0, 0.001}};       // opposite corner
  double perturbation_fraction = 0.25;  // of the local spacing, per axis; in [0, 0.5)
  std::uint64_t seed = 0;

  enum class Splitting {
    randomized,  // per-cell pseudo-random diagonal direction (conforming)
    uniform,     // same diagonal everywhere: the regular six-tet lattice
  };
  Splitting splitting = Splitting::randomized;
};

/// Incidence of a node on an edge: sign is +1 when the node is the edge tail
/// (first index, the "j" of an oriented pair j<k) and -1 when it is the head.
struct IncidentEdge {
  int edge;
  int sign;
};

struct MeshTopology {
  std::vector<Vec3> node_coords;
  std::vector<std::array<int, 4>> tets;            // positively oriented
  std::vector<std::array<int, 2>> edges;           // unique pairs, j < k, sorted
  std::vector<std::array<int, 3>> boundary_tris;   // outward orientation
  std::vector<int> boundary_tri_tag;               // 1:xmin 2:xmax 3:ymin 4:ymax 5:zmin 6:zmax
  std::vector<std::vector<IncidentEdge>> node_edges;

  int num_nodes() const { return static_cast<int>(node_coords.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

/// Signed volume of tet (a,b,c,d); positive for right-handed ordering.
double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Builds the lattice, perturbs it, splits cells into tetrahedra, and derives
/// edges, boundary triangles, and node-edge adjacency. Throws
/// std::invalid_argument on a bad spec and std::runtime_error if any generated
/// tet has non-positive volume.
MeshTopology generate_tet_grid(const GridSpec& spec);

/// Derives edges, adjacency, and (if absent) boundary data from node/tet data.
/// Used by generate_tet_grid and by the importer.
void finalize_topology(MeshTopology& mesh, bool rebuild_boundary);

/// Plain-text exchange format (see README): header line with counts, node
/// coordinate lines at 17 significant digits, 1-based tet connectivity,
/// 1-based boundary triangles with a plane tag. Round-trips are lossless.
void export_mesh(const MeshTopology& mesh, const std::string& path);
MeshTopology import_mesh(const std::string& path);

}  // namespace efv

#endif  // EFV_MESH_HPP

#include "efv/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace efv {

namespace {

// The six Kuhn tetrahedra of a unit cube along the (0,0,0)-(1,1,1) diagonal:
// lattice-step paths 0 -> e_p -> e_p+e_q -> (1,1,1) for each axis permutation.
constexpr int kAxisPerms[6][3] = {
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
};
constexpr bool kPermEven[6] = {true, false, false, true, true, false};

int corner_bits(int bx, int by, int bz) { return bx | (by << 1) | (bz << 2); }

}  // namespace

double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return (b - a).cross(c - a).dot(d - a) / 6.0;
}

MeshTopology generate_tet_grid(const GridSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("GridSpec: n must be >= 2");
  if (!(spec.perturbation_fraction >= 0.0 && spec.perturbation_fraction < 0.5))
    throw std::invalid_argument("GridSpec: perturbation_fraction must be in [0, 0.5)");
  for (int d = 0; d < 3; ++d)
    if (!(spec.hi[d] > spec.lo[d]))
      throw std::invalid_argument("GridSpec: domain extents must be strictly positive");

  const int n = spec.n;
  const Vec3 h = (spec.hi - spec.lo) / double(n - 1);

  MeshTopology mesh;
  mesh.node_coords.resize(std::size_t(n) * n * n);

  // Node placement. Each node draws three offsets from its own stream so the
  // result is independent of traversal order; offsets normal to a boundary
  // plane are masked out, and nodes on two or more planes are left alone.
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int id = i + n * (j + n * k);
        Vec3 x = spec.lo + Vec3(i * h[0], j * h[1], k * h[2]);
        if (spec.perturbation_fraction > 0.0) {
          SplitRng rng(mix_seed(spec.seed, std::uint64_t(id) + 1));
          Vec3 offset;
          for (int d = 0; d < 3; ++d) offset[d] = rng.next_symmetric();
          const bool on_x = (i == 0 || i == n - 1);
          const bool on_y = (j == 0 || j == n - 1);
          const bool on_z = (k == 0 || k == n - 1);
          const int planes = int(on_x) + int(on_y) + int(on_z);
          if (planes >= 2) {
            offset.setZero();
          } else {
            if (on_x) offset[0] = 0.0;
            if (on_y) offset[1] = 0.0;
            if (on_z) offset[2] = 0.0;
          }
          for (int d = 0; d < 3; ++d) x[d] += spec.perturbation_fraction * h[d] * offset[d];
        }
        mesh.node_coords[id] = x;
      }

  // Cell splitting. A main diagonal induces one of two diagonal classes on
  // each cube face, equal on opposite faces, and the three classes of a cell
  // always satisfy class_x = class_y XOR class_z. Conformity across shared
  // faces therefore leaves exactly one random bit per grid line: the class
  // fields are class_x(j,k) = q(j)^r(k), class_y(i,k) = p(i)^r(k),
  // class_z(i,j) = p(i)^q(j), and the cell's diagonal runs from corner
  // a = (0, class_z, class_y) to the opposite corner.
  const int nc = n - 1;
  std::vector<int> pbit(nc, 0), qbit(nc, 0), rbit(nc, 0);
  if (spec.splitting == GridSpec::Splitting::randomized) {
    SplitRng rng(mix_seed(spec.seed, 0xC0FFEEull));
    for (int i = 0; i < nc; ++i) pbit[i] = int(rng.next_u64() & 1u);
    for (int j = 0; j < nc; ++j) qbit[j] = int(rng.next_u64() & 1u);
    for (int k = 0; k < nc; ++k) rbit[k] = int(rng.next_u64() & 1u);
  }

  mesh.tets.reserve(std::size_t(nc) * nc * nc * 6);
  for (int k = 0; k < nc; ++k)
    for (int j = 0; j < nc; ++j)
      for (int i = 0; i < nc; ++i) {
        int corner_id[8];
        for (int bz = 0; bz < 2; ++bz)
          for (int by = 0; by < 2; ++by)
            for (int bx = 0; bx < 2; ++bx)
              corner_id[corner_bits(bx, by, bz)] = (i + bx) + n * ((j + by) + n * (k + bz));

        const int class_z = pbit[i] ^ qbit[j];
        const int class_y = pbit[i] ^ rbit[k];
        const int a_bits[3] = {0, class_z, class_y};  // diagonal corner with x-bit 0
        const int a = corner_bits(a_bits[0], a_bits[1], a_bits[2]);
        const int a_popcount = a_bits[1] + a_bits[2];

        for (int perm = 0; perm < 6; ++perm) {
          const int s0 = 1 << kAxisPerms[perm][0];
          const int s1 = 1 << kAxisPerms[perm][1];
          int v0 = a;
          int v1 = a ^ s0;
          int v2 = a ^ s0 ^ s1;
          int v3 = a ^ 7;
          // Reflections along the diagonal-corner bits flip orientation.
          const bool positive = kPermEven[perm] == ((a_popcount & 1) == 0);
          std::array<int, 4> tet = {corner_id[v0], corner_id[v1], corner_id[v2],
                                    corner_id[v3]};
          if (!positive) std::swap(tet[1], tet[2]);
          mesh.tets.push_back(tet);
        }
      }

  for (const auto& t : mesh.tets) {
    const double vol = tet_volume(mesh.node_coords[t[0]], mesh.node_coords[t[1]],
                                  mesh.node_coords[t[2]], mesh.node_coords[t[3]]);
    if (!(vol > 0.0)) throw std::runtime_error("generate_tet_grid: non-positive tet volume");
  }

  finalize_topology(mesh, /*rebuild_boundary=*/true);

  // Tag boundary triangles by the lattice plane all three nodes share.
  mesh.boundary_tri_tag.assign(mesh.boundary_tris.size(), 0);
  auto lattice = [n](int id) {
    return std::array<int, 3>{id % n, (id / n) % n, id / (n * n)};
  };
  for (std::size_t t = 0; t < mesh.boundary_tris.size(); ++t) {
    const auto& tri = mesh.boundary_tris[t];
    const auto a = lattice(tri[0]), b = lattice(tri[1]), c = lattice(tri[2]);
    int tag = 0;
    for (int d = 0; d < 3; ++d) {
      if (a[d] == 0 && b[d] == 0 && c[d] == 0) tag = 1 + 2 * d;
      if (a[d] == n - 1 && b[d] == n - 1 && c[d] == n - 1) tag = 2 + 2 * d;
    }
    if (tag == 0) throw std::runtime_error("generate_tet_grid: boundary face off-plane");
    mesh.boundary_tri_tag[t] = tag;
  }
  return mesh;
}

void finalize_topology(MeshTopology& mesh, bool rebuild_boundary) {
  const int nnodes = mesh.num_nodes();
  const std::uint64_t stride = std::uint64_t(nnodes) + 1;

  // Unique edges, sorted lexicographically.
  std::vector<std::uint64_t> keys;
  keys.reserve(mesh.tets.size() * 6);
  for (const auto& t : mesh.tets)
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        const int lo = std::min(t[a], t[b]), hi = std::max(t[a], t[b]);
        keys.push_back(std::uint64_t(lo) * stride + hi);
      }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  mesh.edges.resize(keys.size());
  for (std::size_t e = 0; e < keys.size(); ++e)
    mesh.edges[e] = {int(keys[e] / stride), int(keys[e] % stride)};

  mesh.node_edges.assign(nnodes, {});
  for (int e = 0; e < mesh.num_edges(); ++e) {
    mesh.node_edges[mesh.edges[e][0]].push_back({e, +1});
    mesh.node_edges[mesh.edges[e][1]].push_back({e, -1});
  }

  if (!rebuild_boundary) return;

  // Faces seen exactly once are on the boundary; orient them away from the
  // opposite tet vertex.
  struct FaceRec {
    std::array<int, 3> tri;  // sorted
    int opposite;
    bool operator<(const FaceRec& o) const { return tri < o.tri; }
  };
  std::vector<FaceRec> faces;
  faces.reserve(mesh.tets.size() * 4);
  for (const auto& t : mesh.tets)
    for (int f = 0; f < 4; ++f) {
      FaceRec rec;
      int m = 0;
      for (int v = 0; v < 4; ++v)
        if (v != f) rec.tri[m++] = t[v];
      std::sort(rec.tri.begin(), rec.tri.end());
      rec.opposite = t[f];
      faces.push_back(rec);
    }
  std::sort(faces.begin(), faces.end());

  mesh.boundary_tris.clear();
  mesh.boundary_tri_tag.clear();
  for (std::size_t i = 0; i < faces.size();) {
    std::size_t run = i + 1;
    while (run < faces.size() && faces[run].tri == faces[i].tri) ++run;
    if (run - i == 1) {
      std::array<int, 3> oriented = faces[i].tri;
      const Vec3& pa = mesh.node_coords[oriented[0]];
      const Vec3 normal = (mesh.node_coords[oriented[1]] - pa)
                              .cross(mesh.node_coords[oriented[2]] - pa);
      if (normal.dot(mesh.node_coords[faces[i].opposite] - pa) > 0.0)
        std::swap(oriented[1], oriented[2]);
      mesh.boundary_tris.push_back(oriented);
    }
    i = run;
  }
  mesh.boundary_tri_tag.assign(mesh.boundary_tris.size(), 0);
}

void export_mesh(const MeshTopology& mesh, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("export_mesh: cannot open " + path);
  std::fprintf(fp, "efv3d-mesh 1\n");
  std::fprintf(fp, "%d %zu %zu\n", mesh.num_nodes(), mesh.tets.size(),
               mesh.boundary_tris.size());
  for (const auto& x : mesh.node_coords)
    std::fprintf(fp, "%.17g %.17g %.17g\n", x[0], x[1], x[2]);
  for (const auto& t : mesh.tets)
    std::fprintf(fp, "%d %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1, t[3] + 1);
  for (std::size_t i = 0; i < mesh.boundary_tris.size(); ++i) {
    const auto& b = mesh.boundary_tris[i];
    const int tag = i < mesh.boundary_tri_tag.size() ? mesh.boundary_tri_tag[i] : 0;
    std::fprintf(fp, "%d %d %d %d\n", b[0] + 1, b[1] + 1, b[2] + 1, tag);
  }
  std::fclose(fp);
}

MeshTopology import_mesh(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "r");
  if (!fp) throw std::runtime_error("import_mesh: cannot open " + path);
  char magic[32];
  int version = 0;
  if (std::fscanf(fp, "%31s %d", magic, &version) != 2 ||
      std::string(magic) != "efv3d-mesh" || version != 1) {
    std::fclose(fp);
    throw std::runtime_error("import_mesh: bad header in " + path);
  }
  long long nnodes = 0, ntets = 0, nbtris = 0;
  if (std::fscanf(fp, "%lld %lld %lld", &nnodes, &ntets, &nbtris) != 3 || nnodes <= 0) {
    std::fclose(fp);
    throw std::runtime_error("import_mesh: bad counts in " + path);
  }
  MeshTopology mesh;
  mesh.node_coords.resize(nnodes);
  for (auto& x : mesh.node_coords)
    if (std::fscanf(fp, "%lg %lg %lg", &x[0], &x[1], &x[2]) != 3) {
      std::fclose(fp);
      throw std::runtime_error("import_mesh: truncated node block");
    }
  mesh.tets.resize(ntets);
  for (auto& t : mesh.tets) {
    if (std::fscanf(fp, "%d %d %d %d", &t[0], &t[1], &t[2], &t[3]) != 4) {
      std::fclose(fp);
      throw std::runtime_error("import_mesh: truncated tet block");
    }
    for (int& v : t) v -= 1;
  }
  mesh.boundary_tris.resize(nbtris);
  mesh.boundary_tri_tag.resize(nbtris);
  for (std::size_t i = 0; i < mesh.boundary_tris.size(); ++i) {
    auto& b = mesh.boundary_tris[i];
    if (std::fscanf(fp, "%d %d %d %d", &b[0], &b[1], &b[2], &mesh.boundary_tri_tag[i]) != 4) {
      std::fclose(fp);
      throw std::runtime_error("import_mesh: truncated boundary block");
    }
    for (int& v : b) v -= 1;
  }
  std::fclose(fp);
  finalize_topology(mesh, /*rebuild_boundary=*/false);
  return mesh;
}

}  // namespace efv

#include "mms/mesh.hpp"

namespace mms {

const double kHexCorners[8][3] = {
    {-1.0, -1.0, -1.0}, {1.0, -1.0, -1.0}, {1.0, 1.0, -1.0}, {-1.0, 1.0, -1.0},
    {-1.0, -1.0, 1.0},  {1.0, -1.0, 1.0},  {1.0, 1.0, 1.0},  {-1.0, 1.0, 1.0}};

Mesh build_mesh(int N) {
  if (N < 2) throw InvalidResolution("build_mesh: N must be >= 2");

  Mesh mesh;
  mesh.n_per_side = N;
  mesh.h = 1.0 / static_cast<double>(N);

  const int m = N + 1;
  mesh.nodes.resize(static_cast<size_t>(m) * m * m);
  mesh.is_boundary.assign(mesh.nodes.size(), 0);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        const int id = mesh.node_id(i, j, k);
        mesh.nodes[id] = Vec3(i * mesh.h, j * mesh.h, k * mesh.h);
        const bool bdry = (i == 0 || i == N || j == 0 || j == N || k == 0 ||
                           k == N);
        mesh.is_boundary[id] = bdry ? 1 : 0;
        if (bdry) {
          mesh.boundary_nodes.push_back(id);
        } else {
          mesh.interior_nodes.push_back(id);
        }
      }
    }
  }

  mesh.elems.reserve(static_cast<size_t>(N) * N * N);
  for (int k = 0; k < N; ++k) {
    for (int j = 0; j < N; ++j) {
      for (int i = 0; i < N; ++i) {
        mesh.elems.push_back({mesh.node_id(i, j, k), mesh.node_id(i + 1, j, k),
                              mesh.node_id(i + 1, j + 1, k),
                              mesh.node_id(i, j + 1, k),
                              mesh.node_id(i, j, k + 1),
                              mesh.node_id(i + 1, j, k + 1),
                              mesh.node_id(i + 1, j + 1, k + 1),
                              mesh.node_id(i, j + 1, k + 1)});
      }
    }
  }
  return mesh;
}

ShapeEval shape(const Vec3& xi) {
  ShapeEval se;
  for (int a = 0; a < 8; ++a) {
    const double gx = kHexCorners[a][0];
    const double gy = kHexCorners[a][1];
    const double gz = kHexCorners[a][2];
    const double fx = 1.0 + gx * xi[0];
    const double fy = 1.0 + gy * xi[1];
    const double fz = 1.0 + gz * xi[2];
    se.N[a] = 0.125 * fx * fy * fz;
    se.dN[a][0] = 0.125 * gx * fy * fz;
    se.dN[a][1] = 0.125 * fx * gy * fz;
    se.dN[a][2] = 0.125 * fx * fy * gz;
  }
  return se;
}

}  // namespace mms

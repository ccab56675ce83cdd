#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mms/errors.hpp"
#include "mms/tensor.hpp"

namespace mms {

/// Structured hexahedral grid on the unit cube: N elements per side,
/// (N+1)^3 nodes. Node ids are lexicographic with x fastest, then y, then z.
struct Mesh {
  int n_per_side = 0;
  double h = 0.0;
  std::vector<Vec3> nodes;
  std::vector<std::array<int, 8>> elems;
  std::vector<int> boundary_nodes;  // sorted ids
  std::vector<int> interior_nodes;  // sorted ids
  std::vector<std::uint8_t> is_boundary;

  int nodes_per_side() const { return n_per_side + 1; }
  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_elems() const { return static_cast<int>(elems.size()); }
  int num_dofs() const { return 3 * num_nodes(); }

  int node_id(int i, int j, int k) const {
    const int m = nodes_per_side();
    return i + m * (j + m * k);
  }
};

/// Builds the structured mesh. Throws InvalidResolution for N < 2.
Mesh build_mesh(int N);

/// Trilinear shape functions and their derivatives with respect to the
/// natural coordinates xi in [-1,1]^3, in the standard corner ordering
/// (x fastest on the bottom face, counterclockwise, then the top face).
struct ShapeEval {
  double N[8];
  double dN[8][3];
};

ShapeEval shape(const Vec3& xi);

/// Natural coordinates of the 8 element corners, matching Mesh::elems order.
extern const double kHexCorners[8][3];

}  // namespace mms

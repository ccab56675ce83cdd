#pragma once

#include <cstdint>
#include <vector>

#include "mms/manufactured.hpp"
#include "mms/mesh.hpp"
#include "mms/sparse.hpp"

namespace mms {

/// Total-Lagrangian assembly over a structured hex mesh with 2x2x2 Gauss
/// quadrature. The sparsity pattern and per-element scatter tables are
/// built once and reused across Newton iterations.
///
/// Element loops run color-by-color (2x2x2 element parity), so same-color
/// elements share no nodes: parallel scatter-adds are write-disjoint and
/// every accumulation order is fixed, independent of thread count.
class Assembler {
 public:
  explicit Assembler(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }

  /// f_int,(a,i) = integral P_ij grad(N_a)_j dV0. No boundary treatment.
  std::vector<double> internal_force(const std::vector<double>& u, CaseId c,
                                     const MaterialParams& p) const;

  /// Stiffness from the consistent tangent, element-wise symmetrized.
  /// With eliminate_bc, boundary rows/cols are dropped and replaced by a
  /// unit diagonal.
  void tangent_matrix(const std::vector<double>& u, CaseId c,
                      const MaterialParams& p, CsrMatrix& K,
                      bool eliminate_bc = true) const;

  /// Matrix with the mesh pattern, values zeroed.
  CsrMatrix make_matrix() const;

  /// External force at load factor t. Lumped: phi(X_node) h^3 at interior
  /// nodes. Body: integral N_a phi dV0 by quadrature. Boundary dofs zero.
  std::vector<double> external_force(CaseId source_case,
                                     const MaterialParams& p,
                                     const MmsField& field, LoadMode mode,
                                     double t) const;

  /// Reference coordinates of Gauss point g of element e.
  Vec3 gauss_point(int elem, int gp) const;

 private:
  void element_internal(const std::vector<double>& u, CaseId c,
                        const MaterialParams& p, int e,
                        double fe[8][3]) const;

  const Mesh* mesh_;
  double grad_n_[8][8][3];  // [gp][a][dim], reference gradients
  double shape_n_[8][8];    // [gp][a]
  double gp_local_[8][3];   // gauss point offset from element corner
  double wdet_;             // quadrature weight x reference volume scale
  std::vector<int> color_elems_[8];
  std::vector<int> node_adj_ptr_;
  std::vector<int> node_adj_;
  std::vector<int> node_self_pos_;
  std::vector<std::uint8_t> pair_pos_;  // [64 e + 8 a + b]
  std::vector<int> rowptr_;
  std::vector<int> cols_;
};

/// One-shot wrappers over Assembler for the common operations.
std::vector<double> assemble_internal(const Mesh& mesh,
                                      const std::vector<double>& u, CaseId c,
                                      const MaterialParams& p);
CsrMatrix assemble_tangent(const Mesh& mesh, const std::vector<double>& u,
                           CaseId c, const MaterialParams& p,
                           bool eliminate_bc = true);
std::vector<double> assemble_external(const Mesh& mesh, const MmsField& field,
                                      CaseId source_case,
                                      const MaterialParams& p, LoadMode mode,
                                      double t);

}  // namespace mms

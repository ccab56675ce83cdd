#include "mms/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "mms/parallel.hpp"

namespace mms {

namespace {
const double kGauss = 1.0 / std::sqrt(3.0);
}

Assembler::Assembler(const Mesh& mesh) : mesh_(&mesh) {
  const int N = mesh.n_per_side;
  const int m = mesh.nodes_per_side();
  const double h = mesh.h;

  // Shape data is shared by every element of the uniform grid:
  // dX/dxi = (h/2) I, so grad_X N = (2/h) dN/dxi and w det = (h/2)^3.
  wdet_ = (h / 2.0) * (h / 2.0) * (h / 2.0);
  for (int gz = 0; gz < 2; ++gz)
    for (int gy = 0; gy < 2; ++gy)
      for (int gx = 0; gx < 2; ++gx) {
        const int g = gx + 2 * gy + 4 * gz;
        const Vec3 xi((gx ? kGauss : -kGauss), (gy ? kGauss : -kGauss),
                      (gz ? kGauss : -kGauss));
        const ShapeEval se = shape(xi);
        for (int a = 0; a < 8; ++a) {
          shape_n_[g][a] = se.N[a];
          for (int d = 0; d < 3; ++d) grad_n_[g][a][d] = (2.0 / h) * se.dN[a][d];
        }
        for (int d = 0; d < 3; ++d) gp_local_[g][d] = (h / 2.0) * (1.0 + xi[d]);
      }

  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        const int e = i + N * (j + N * k);
        const int color = (i & 1) | ((j & 1) << 1) | ((k & 1) << 2);
        color_elems_[color].push_back(e);
      }

  // Node adjacency (Chebyshev distance <= 1), generated in ascending order.
  node_adj_ptr_.assign(mesh.num_nodes() + 1, 0);
  node_self_pos_.assign(mesh.num_nodes(), 0);
  node_adj_.reserve(static_cast<size_t>(mesh.num_nodes()) * 27);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) {
        const int id = mesh.node_id(i, j, k);
        for (int dk = -1; dk <= 1; ++dk)
          for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) {
              const int ni = i + di, nj = j + dj, nk = k + dk;
              if (ni < 0 || ni >= m || nj < 0 || nj >= m || nk < 0 || nk >= m)
                continue;
              const int nid = mesh.node_id(ni, nj, nk);
              if (nid == id)
                node_self_pos_[id] =
                    static_cast<int>(node_adj_.size()) - node_adj_ptr_[id];
              node_adj_.push_back(nid);
            }
        node_adj_ptr_[id + 1] = static_cast<int>(node_adj_.size());
      }

  // Dof-level CSR pattern: each dof row holds the 3 dofs of every adjacent
  // node, consecutive per node, nodes ascending.
  const int ndofs = mesh.num_dofs();
  rowptr_.assign(ndofs + 1, 0);
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    const int deg = node_adj_ptr_[n + 1] - node_adj_ptr_[n];
    for (int i = 0; i < 3; ++i) rowptr_[3 * n + i + 1] = 3 * deg;
  }
  for (int r = 0; r < ndofs; ++r) rowptr_[r + 1] += rowptr_[r];
  cols_.resize(rowptr_[ndofs]);
  parallel::for_range(mesh.num_nodes(), [&](std::ptrdiff_t n) {
    for (int i = 0; i < 3; ++i) {
      int* out = cols_.data() + rowptr_[3 * n + i];
      for (int q = node_adj_ptr_[n]; q < node_adj_ptr_[n + 1]; ++q) {
        const int nb = node_adj_[q];
        *out++ = 3 * nb;
        *out++ = 3 * nb + 1;
        *out++ = 3 * nb + 2;
      }
    }
  });

  // Per-element pair positions: slot of node b inside the adjacency list of
  // node a, for all 64 (a, b) corner pairs.
  pair_pos_.resize(static_cast<size_t>(mesh.num_elems()) * 64);
  parallel::for_range(mesh.num_elems(), [&](std::ptrdiff_t e) {
    const auto& conn = mesh.elems[e];
    for (int a = 0; a < 8; ++a) {
      const int ga = conn[a];
      const int* lo = node_adj_.data() + node_adj_ptr_[ga];
      const int* hi = node_adj_.data() + node_adj_ptr_[ga + 1];
      for (int b = 0; b < 8; ++b) {
        const int* it = std::lower_bound(lo, hi, conn[b]);
        pair_pos_[64 * e + 8 * a + b] = static_cast<std::uint8_t>(it - lo);
      }
    }
  });
}

CsrMatrix Assembler::make_matrix() const {
  CsrMatrix K;
  K.nrows = mesh_->num_dofs();
  K.rowptr = rowptr_;
  K.cols = cols_;
  K.vals.assign(cols_.size(), 0.0);
  return K;
}

void Assembler::element_internal(const std::vector<double>& u, CaseId c,
                                 const MaterialParams& p, int e,
                                 double fe[8][3]) const {
  const auto& conn = mesh_->elems[e];
  double ue[8][3];
  for (int a = 0; a < 8; ++a)
    for (int i = 0; i < 3; ++i) ue[a][i] = u[3 * conn[a] + i];

  for (int a = 0; a < 8; ++a)
    for (int i = 0; i < 3; ++i) fe[a][i] = 0.0;

  for (int g = 0; g < 8; ++g) {
    Mat3 F = Mat3::identity();
    for (int a = 0; a < 8; ++a)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) F.m[i][j] += ue[a][i] * grad_n_[g][a][j];

    Mat3 P;
    try {
      P = pk1(c, p, F);
    } catch (const NonPositiveJacobian&) {
      throw NonPositiveJacobian("internal force: inverted element " +
                                std::to_string(e));
    }
    for (int a = 0; a < 8; ++a)
      for (int i = 0; i < 3; ++i) {
        fe[a][i] += wdet_ * (P.m[i][0] * grad_n_[g][a][0] +
                             P.m[i][1] * grad_n_[g][a][1] +
                             P.m[i][2] * grad_n_[g][a][2]);
      }
  }
}

std::vector<double> Assembler::internal_force(const std::vector<double>& u,
                                              CaseId c,
                                              const MaterialParams& p) const {
  std::vector<double> f(mesh_->num_dofs(), 0.0);
  for (const auto& elems : color_elems_) {
    parallel::for_range(static_cast<std::ptrdiff_t>(elems.size()),
                        [&](std::ptrdiff_t idx) {
                          const int e = elems[idx];
                          double fe[8][3];
                          element_internal(u, c, p, e, fe);
                          const auto& conn = mesh_->elems[e];
                          for (int a = 0; a < 8; ++a)
                            for (int i = 0; i < 3; ++i)
                              f[3 * conn[a] + i] += fe[a][i];
                        });
  }
  return f;
}

void Assembler::tangent_matrix(const std::vector<double>& u, CaseId c,
                               const MaterialParams& p, CsrMatrix& K,
                               bool eliminate_bc) const {
  if (K.nrows != mesh_->num_dofs() || K.nnz() != cols_.size()) K = make_matrix();
  K.zero_values();

  const auto& is_bdry = mesh_->is_boundary;

  for (const auto& elems : color_elems_) {
    parallel::for_range(
        static_cast<std::ptrdiff_t>(elems.size()), [&](std::ptrdiff_t idx) {
          const int e = elems[idx];
          const auto& conn = mesh_->elems[e];
          double ue[8][3];
          for (int a = 0; a < 8; ++a)
            for (int i = 0; i < 3; ++i) ue[a][i] = u[3 * conn[a] + i];

          double ke[24][24] = {};
          for (int g = 0; g < 8; ++g) {
            Mat3 F = Mat3::identity();
            for (int a = 0; a < 8; ++a)
              for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                  F.m[i][j] += ue[a][i] * grad_n_[g][a][j];

            Tangent4 A;
            try {
              A = tangent(c, p, F);
            } catch (const NonPositiveJacobian&) {
              throw NonPositiveJacobian("tangent: inverted element " +
                                        std::to_string(e));
            }
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j) {
                double vb[8][3];
                for (int b = 0; b < 8; ++b)
                  for (int k = 0; k < 3; ++k) {
                    vb[b][k] = A.a[i][k][j][0] * grad_n_[g][b][0] +
                               A.a[i][k][j][1] * grad_n_[g][b][1] +
                               A.a[i][k][j][2] * grad_n_[g][b][2];
                  }
                for (int a = 0; a < 8; ++a)
                  for (int b = 0; b < 8; ++b) {
                    ke[3 * a + i][3 * b + j] +=
                        wdet_ * (grad_n_[g][a][0] * vb[b][0] +
                                 grad_n_[g][a][1] * vb[b][1] +
                                 grad_n_[g][a][2] * vb[b][2]);
                  }
              }
          }

          // Element-level symmetrization; the Hencky tangent is mildly
          // non-symmetric and CG needs K = K^T.
          for (int r = 0; r < 24; ++r)
            for (int s = r + 1; s < 24; ++s) {
              const double avg = 0.5 * (ke[r][s] + ke[s][r]);
              ke[r][s] = avg;
              ke[s][r] = avg;
            }

          for (int a = 0; a < 8; ++a) {
            const int ga = conn[a];
            if (eliminate_bc && is_bdry[ga]) continue;
            for (int b = 0; b < 8; ++b) {
              const int gb = conn[b];
              if (eliminate_bc && is_bdry[gb]) continue;
              const int pos = pair_pos_[64 * e + 8 * a + b];
              for (int i = 0; i < 3; ++i) {
                double* row = K.vals.data() + rowptr_[3 * ga + i] + 3 * pos;
                row[0] += ke[3 * a + i][3 * b];
                row[1] += ke[3 * a + i][3 * b + 1];
                row[2] += ke[3 * a + i][3 * b + 2];
              }
            }
          }
        });
  }

  if (eliminate_bc) {
    for (int nb : mesh_->boundary_nodes) {
      const int pos = node_self_pos_[nb];
      for (int i = 0; i < 3; ++i) {
        K.vals[rowptr_[3 * nb + i] + 3 * pos + i] = 1.0;
      }
    }
  }
}

std::vector<double> Assembler::external_force(CaseId source_case,
                                              const MaterialParams& p,
                                              const MmsField& field,
                                              LoadMode mode, double t) const {
  std::vector<double> f(mesh_->num_dofs(), 0.0);

  if (mode == LoadMode::lumped) {
    const double h3 = mesh_->h * mesh_->h * mesh_->h;
    const auto& interior = mesh_->interior_nodes;
    parallel::for_range(static_cast<std::ptrdiff_t>(interior.size()),
                        [&](std::ptrdiff_t idx) {
                          const int n = interior[idx];
                          const SourceEval se =
                              source(source_case, p, field, mesh_->nodes[n]);
                          for (int i = 0; i < 3; ++i)
                            f[3 * n + i] = se.phi[i] * h3;
                        });
  } else {
    for (const auto& elems : color_elems_) {
      parallel::for_range(
          static_cast<std::ptrdiff_t>(elems.size()), [&](std::ptrdiff_t idx) {
            const int e = elems[idx];
            const auto& conn = mesh_->elems[e];
            double fe[8][3] = {};
            for (int g = 0; g < 8; ++g) {
              const SourceEval se =
                  source(source_case, p, field, gauss_point(e, g));
              for (int a = 0; a < 8; ++a)
                for (int i = 0; i < 3; ++i)
                  fe[a][i] += wdet_ * shape_n_[g][a] * se.phi[i];
            }
            for (int a = 0; a < 8; ++a)
              for (int i = 0; i < 3; ++i) f[3 * conn[a] + i] += fe[a][i];
          });
    }
    for (int nb : mesh_->boundary_nodes)
      for (int i = 0; i < 3; ++i) f[3 * nb + i] = 0.0;
  }

  if (t != 1.0) {
    for (double& v : f) v *= t;
  }
  return f;
}

Vec3 Assembler::gauss_point(int elem, int gp) const {
  const Vec3& corner = mesh_->nodes[mesh_->elems[elem][0]];
  return Vec3(corner[0] + gp_local_[gp][0], corner[1] + gp_local_[gp][1],
              corner[2] + gp_local_[gp][2]);
}

std::vector<double> assemble_internal(const Mesh& mesh,
                                      const std::vector<double>& u, CaseId c,
                                      const MaterialParams& p) {
  return Assembler(mesh).internal_force(u, c, p);
}

CsrMatrix assemble_tangent(const Mesh& mesh, const std::vector<double>& u,
                           CaseId c, const MaterialParams& p,
                           bool eliminate_bc) {
  Assembler asmb(mesh);
  CsrMatrix K = asmb.make_matrix();
  asmb.tangent_matrix(u, c, p, K, eliminate_bc);
  return K;
}

std::vector<double> assemble_external(const Mesh& mesh, const MmsField& field,
                                      CaseId source_case,
                                      const MaterialParams& p, LoadMode mode,
                                      double t) {
  return Assembler(mesh).external_force(source_case, p, field, mode, t);
}

}  // namespace mms

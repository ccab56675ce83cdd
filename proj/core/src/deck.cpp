#include "mms/deck.hpp"

#include <cmath>
#include <ostream>
#include <vector>

#include "mms/assembly.hpp"
#include "mms/numfmt.hpp"
#include "mms/parallel.hpp"

namespace mms {

int export_cload(const DeckSpec& spec, const MaterialParams& p,
                 const MmsField& field, std::ostream& out) {
  if (spec.load != LoadMode::lumped) {
    throw ValidationError("export_cload: spec.load must be lumped/cload");
  }
  const Mesh mesh = build_mesh(spec.grid_n);

  const int ni = static_cast<int>(mesh.interior_nodes.size());
  std::vector<Vec3> loads(ni);
  parallel::for_range(ni, [&](std::ptrdiff_t idx) {
    const int n = mesh.interior_nodes[idx];
    loads[idx] = load_value(spec.target_case, p, field, mesh.nodes[n],
                            LoadMode::lumped, false, mesh.h);
  });

  out << "*CLOAD\n";
  int lines = 0;
  for (int idx = 0; idx < ni; ++idx) {
    const int node_1based = mesh.interior_nodes[idx] + 1;
    for (int dof = 0; dof < 3; ++dof) {
      const double v = loads[idx][dof];
      if (v == 0.0 && !spec.emit_zeros) continue;
      out << node_1based << ", " << (dof + 1) << ", "
          << fmt_sig(v, spec.precision) << '\n';
      ++lines;
    }
  }
  return lines;
}

int export_dload_table(const DeckSpec& spec, const MaterialParams& p,
                       const MmsField& field, std::ostream& out) {
  if (spec.load != LoadMode::body) {
    throw ValidationError("export_dload_table: spec.load must be body/dload");
  }
  const Mesh mesh = build_mesh(spec.grid_n);
  const Assembler asmb(mesh);

  const int rows_total = mesh.num_elems() * 8;
  std::vector<Vec3> pts(rows_total);
  std::vector<Vec3> vals(rows_total);
  parallel::for_range(rows_total, [&](std::ptrdiff_t r) {
    const int e = static_cast<int>(r) / 8;
    const int g = static_cast<int>(r) % 8;
    const Vec3 X = asmb.gauss_point(e, g);
    pts[r] = X;
    vals[r] =
        load_value(spec.target_case, p, field, X, LoadMode::body, spec.nlgeom,
                   mesh.h);
  });

  out << "X,Y,Z,val_x,val_y,val_z\n";
  for (int r = 0; r < rows_total; ++r) {
    out << fmt_sig(pts[r][0], spec.precision) << ','
        << fmt_sig(pts[r][1], spec.precision) << ','
        << fmt_sig(pts[r][2], spec.precision) << ','
        << fmt_sig(vals[r][0], spec.precision) << ','
        << fmt_sig(vals[r][1], spec.precision) << ','
        << fmt_sig(vals[r][2], spec.precision) << '\n';
  }
  return rows_total;
}

int export_field_csv(CaseId c, const MaterialParams& p, const MmsField& field,
                     int sample_n, std::ostream& out) {
  if (sample_n < 1) throw ValidationError("export_field_csv: sample_n >= 1");
  const int m = sample_n + 1;
  const double h = 1.0 / sample_n;
  const int rows_total = m * m * m;
  std::vector<SourceEval> evals(rows_total);
  parallel::for_range(rows_total, [&](std::ptrdiff_t r) {
    const int i = static_cast<int>(r) % m;
    const int j = (static_cast<int>(r) / m) % m;
    const int k = static_cast<int>(r) / (m * m);
    evals[r] = source(c, p, field, Vec3(i * h, j * h, k * h));
  });

  out << "X,Y,Z,phi_x,phi_y,phi_z,phi_mag,J\n";
  for (int r = 0; r < rows_total; ++r) {
    const int i = r % m;
    const int j = (r / m) % m;
    const int k = r / (m * m);
    const Vec3& phi = evals[r].phi;
    out << fmt_shortest(i * h) << ',' << fmt_shortest(j * h) << ','
        << fmt_shortest(k * h) << ',' << fmt_shortest(phi[0]) << ','
        << fmt_shortest(phi[1]) << ',' << fmt_shortest(phi[2]) << ','
        << fmt_shortest(norm(phi)) << ',' << fmt_shortest(evals[r].J) << '\n';
  }
  return rows_total;
}

int export_solution_csv(const Mesh& mesh, const std::vector<double>& u,
                        std::ostream& out) {
  out << "node_id,X,Y,Z,ux,uy,uz\n";
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    out << n << ',' << fmt_shortest(mesh.nodes[n][0]) << ','
        << fmt_shortest(mesh.nodes[n][1]) << ','
        << fmt_shortest(mesh.nodes[n][2]) << ',' << fmt_shortest(u[3 * n])
        << ',' << fmt_shortest(u[3 * n + 1]) << ','
        << fmt_shortest(u[3 * n + 2]) << '\n';
  }
  return mesh.num_nodes();
}

}  // namespace mms

#pragma once

#include <iosfwd>

#include "mms/manufactured.hpp"
#include "mms/mesh.hpp"

namespace mms {

/// Parameters of a deck export. Lumped (cload) decks carry interior nodes
/// only; node ids are 1-based lexicographic (x fastest, then y, then z).
struct DeckSpec {
  int grid_n = 4;
  LoadMode load = LoadMode::lumped;
  bool nlgeom = false;
  CaseId target_case = CaseId::I;
  int precision = 16;     // significant digits
  bool emit_zeros = false;
};

/// Writes a `*CLOAD` block: one `<node_id>, <dof>, <value>` line per
/// interior node and nonzero dof (dof in 1..3), ascending by (node, dof).
/// Zero values are suppressed unless emit_zeros. Returns data line count.
int export_cload(const DeckSpec& spec, const MaterialParams& p,
                 const MmsField& field, std::ostream& out);

/// Writes the sampled body-force table `X,Y,Z,val_x,val_y,val_z` at the
/// 2x2x2 Gauss points of every element (element order, then Gauss order),
/// with val = phi, or phi/J when nlgeom. Returns data row count.
int export_dload_table(const DeckSpec& spec, const MaterialParams& p,
                       const MmsField& field, std::ostream& out);

/// Source field sampled on the nodes of an N-per-side lattice:
/// `X,Y,Z,phi_x,phi_y,phi_z,phi_mag,J`. Returns data row count.
int export_field_csv(CaseId c, const MaterialParams& p, const MmsField& field,
                     int sample_n, std::ostream& out);

/// Solution snapshot `node_id,X,Y,Z,ux,uy,uz` (0-based ids). Returns rows.
int export_solution_csv(const Mesh& mesh, const std::vector<double>& u,
                        std::ostream& out);

}  // namespace mms

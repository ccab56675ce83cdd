#pragma once

#include <string>
#include <vector>

#include "mms/solver.hpp"

namespace mms {

/// Normalized displacement error norms. Both are built from the per-node
/// Euclidean error magnitude |u_num - u_mms| / (sqrt(3) C1); l2 is the
/// spatial RMS over all nodes, linf the maximum.
struct NormPair {
  double l2 = 0.0;
  double linf = 0.0;
};

/// Model/source pairing for a study. A mismatch is deliberate: it probes
/// the sensitivity of the observed convergence order to a wrong source.
struct CasePairing {
  CaseId model_case;
  CaseId source_case;
};

NormPair error_norms(const Mesh& mesh, const std::vector<double>& u_num,
                     const MmsField& field);

/// Observed order of convergence ln(L_c/L_f)/ln(r). Throws NonPositiveNorm
/// unless both norms are positive and r > 1.
double ooc(double l_coarse, double l_fine, double r);

/// Increment convergence rate toward an asymptotic finite value:
/// p = ln((L_c - L_m)/(L_m - L_f))/ln(r_inc). Throws DegenerateTriplet when
/// the differences are at the noise floor or differ in sign.
double increment_p(double l_c, double l_m, double l_f, double r_inc);

struct StudyRow {
  double level = 0.0;  // h for grid studies, dt for increment studies
  int grid_n = 0;      // grid studies only
  NormPair norms;
};

struct StudyTable {
  enum class Kind { grid, increment };
  Kind kind = Kind::grid;
  CasePairing pairing{CaseId::I, CaseId::I};
  LoadMode load_mode = LoadMode::lumped;
  std::vector<StudyRow> rows;
  // Grid studies: one entry per successive level pair.
  std::vector<double> ooc_l2, ooc_linf;
  // Increment studies: one entry per consecutive triplet; NaN = degenerate.
  std::vector<double> p_l2, p_linf;
};

/// Runs one solve per level N (linear for model I, converged Newton
/// otherwise) and fills norms plus pairwise OOC values. Levels must ascend
/// by a constant ratio of 2.
StudyTable run_grid_study(const CasePairing& pairing, const MaterialParams& p,
                          const MmsField& field, const SolverConfig& cfg,
                          const std::vector<int>& levels);

/// First-order stepping study over a halving dt sequence at fixed grid
/// spacing; p per consecutive triplet (degenerate triplets recorded as NaN).
StudyTable run_increment_study(CaseId model, const MaterialParams& p,
                               const MmsField& field, const SolverConfig& cfg,
                               const std::vector<double>& dts, int grid_n = 4);

/// Acceptance bands built into study reports.
inline constexpr double kOocBandLo = 1.9;
inline constexpr double kOocBandHi = 2.1;
inline constexpr double kIncrementBandLo = 0.85;
inline constexpr double kIncrementBandHi = 1.15;

struct Report {
  std::string csv;
  std::string summary;
  bool pass = false;
};

/// Machine-readable CSV plus a human summary comparing against the
/// theoretical orders (2 for grids, 1 for increments). `pass` reflects the
/// built-in bands: finest-pair OOC within [1.9, 2.1] for grid studies, all
/// triplet rates within [0.85, 1.15] for increment studies.
Report report(const StudyTable& table);

}  // namespace mms

#pragma once

#include <vector>

#include "mms/assembly.hpp"

namespace mms {

enum class Stepping { converged, first_order };

std::string to_string(Stepping s);
Stepping stepping_from_string(const std::string& s);

struct SolverConfig {
  double rel_tol = 1e-10;       // Newton residual ratio
  int max_newton_iters = 25;
  double dt = 1.0;              // pseudo-time increment, 1/dt integral
  Stepping stepping = Stepping::converged;
  LoadMode load_mode = LoadMode::lumped;
  double linear_tol = 1e-12;    // Krylov relative residual

  /// Number of increments tiling [0, 1]. Throws ValidationError when 1/dt
  /// is not an integer (tolerance 1e-9) or a tolerance is non-positive.
  int increments() const;
  void validate() const;
};

struct IncrementReport {
  double t;
  int newton_iters;
  std::vector<double> residuals;  // |r| before each iteration, then at exit
};

/// Nodal displacements (3 per node) plus per-increment convergence data.
struct SolveResult {
  std::vector<double> u;
  std::vector<IncrementReport> increments;
  long linear_iters_total = 0;
};

/// Jacobi-preconditioned conjugate gradients. Solves A x = b to
/// |r| <= tol |b| starting from x = 0; iteration cap 20 sqrt(n).
/// Throws LinearSolveFailure when the cap is hit. Returns iterations used.
int pcg_solve(const CsrMatrix& A, const std::vector<double>& b,
              std::vector<double>& x, double tol);

/// Single linear solve for the small-strain model (model case I only).
SolveResult solve_linear(const Mesh& mesh, CaseId model,
                         const MaterialParams& p, const MmsField& field,
                         const SolverConfig& cfg, CaseId source_case);

/// Incremental Newton-Raphson: at each t_k = k dt the equilibrium
/// f_int(u) = t_k f_ext is solved to
/// |r| <= rel_tol max(|t_k f_ext|, 1e-12). Throws NewtonDivergence with the
/// residual history when max_newton_iters is exhausted.
SolveResult solve_newton(const Mesh& mesh, CaseId model,
                         const MaterialParams& p, const MmsField& field,
                         const SolverConfig& cfg, CaseId source_case);

/// First-order incremental stepping: one tangent solve per increment from
/// the start-of-increment state, no equilibrium iteration. Global path
/// error O(dt).
SolveResult solve_first_order(const Mesh& mesh, CaseId model,
                              const MaterialParams& p, const MmsField& field,
                              const SolverConfig& cfg, CaseId source_case);

/// Dispatch: model I with converged stepping goes to solve_linear, models
/// II/III to solve_newton; first_order stepping to solve_first_order.
SolveResult solve(const Mesh& mesh, CaseId model, const MaterialParams& p,
                  const MmsField& field, const SolverConfig& cfg,
                  CaseId source_case);

}  // namespace mms
